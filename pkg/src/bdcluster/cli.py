"""Command line: list, build, verify, export-dot."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .blockbuild import render_grid
from .cluster import export_dot, seed_quiver
from .liealg import BDTriple, case_number, enumerate_triples, is_orientable, k_T, standard_case, parse_triple
from .verify import FAIL, INCONCLUSIVE, Config, _fmt, build_pipeline, run_checks, standard_quiver

EXIT = {"pass": 0, FAIL: 1, INCONCLUSIVE: 2}
POLY_TERM_LIMIT = 2000


def cmd_list() -> str:
    lines = [f"{'id':>4}  {'triple':<36} {'k_T':>3}  notes"]
    for t in sorted(enumerate_triples(5), key=case_number):
        k = case_number(t)
        notes = []
        if k == 1:
            notes.append("standard")
        if not is_orientable(t):
            notes.append("non-orientable")
        lines.append(f"{k:>4}  {standard_case(k).to_text():<36} {k_T(t):>3}  {', '.join(notes)}".rstrip())
    return "\n".join(lines)


def _triples(args) -> list[BDTriple]:
    if args.all:
        return [standard_case(k) for k in range(1, 14)]
    if args.case is not None:
        return [standard_case(args.case)]
    if args.triple:
        return [parse_triple(args.triple)]
    raise SystemExit("one of --triple, --case or --all is required")


def _config(args) -> Config:
    return Config(seed=args.seed, points=args.points, symbolic_cap=args.symbolic_cap, m_max=args.mmax,
                  skip_laurent=getattr(args, "skip_laurent", False),
                  skip_semiinv=getattr(args, "skip_semiinv", False),
                  corrupt_b=getattr(args, "corrupt_b", False))


def _outdir(args, t: BDTriple, many: bool) -> Path:
    base = Path(args.out)
    if many:
        k = case_number(t)
        base = base / (f"case{k:02d}" if k else "triple")
    base.mkdir(parents=True, exist_ok=True)
    return base


def _dump(path: Path, obj) -> None:
    path.write_text(json.dumps(_fmt(obj), indent=1) + "\n")


def write_build_files(out: Path, pipeline, config: Config) -> None:
    s = pipeline.structure
    header = f"# {pipeline.triple.to_text()} seed={config.seed}\n"
    blocks = []
    for i, grid in enumerate(s.matrices):
        label = {0: "X", 1: "Y"}.get(i, f"matrix {i + 1}")
        blocks.append(f"[{label}] {len(grid)}x{len(grid)}\n{render_grid(grid)}")
    (out / "mset.txt").write_text(header + "\n\n".join(blocks) + "\n")
    rows = []
    for f in list(s.functions) + [s.det]:
        terms = " ".join(f"{'+' if t.sign > 0 else '-'}det{t.size}[matrix {f.source + 1}{'' if i == 0 else chr(39)}]"
                         for i, t in enumerate(f.terms))
        poly = f.flint()
        body = str(poly) if len(poly) <= POLY_TERM_LIMIT else f"({len(poly)} terms)"
        kind = "stable" if f.stable or f.label == (5, 5) else "mutable"
        rows.append(f"{f.name} {kind} degree={f.degree} {terms}\n  {body}")
    (out / "functions.txt").write_text(header + "\n".join(rows) + "\n")
    names = [f.name for f in s.functions]
    _dump(out / "omega.json", {"variables": names, "lambda": standard_quiver(config)[1],
                               "omega": pipeline.omega})
    mut = [names[i] for i in pipeline.seed.mutable]
    _dump(out / "btilde.json", {"rows": mut, "columns": names, "b_tilde": pipeline.b_tilde})
    (out / "quiver.dot").write_text(export_dot(seed_quiver(pipeline.seed_mat5), f"case{case_number(pipeline.triple)}"))


def cmd_build(args) -> int:
    ts = _triples(args)
    config = _config(args)
    for t in ts:
        out = _outdir(args, t, len(ts) > 1)
        write_build_files(out, build_pipeline(t, config), config)
        print(f"{t.to_text()}: wrote {out}")
    return 0


def cmd_verify(args) -> int:
    ts = _triples(args)
    config = _config(args)
    worst = 0
    for t in ts:
        out = _outdir(args, t, len(ts) > 1)
        pipeline = build_pipeline(t, config)
        write_build_files(out, pipeline, config)
        report = run_checks(t, config, pipeline)
        (out / "report.json").write_text(report.to_json() + "\n")
        failed = [c.name for c in report.checks if c.status not in ("pass", "skipped")]
        total = sum(report.timings.values())
        print(f"case {report.case}: {report.status} ({total:.1f}s){'  ' + ', '.join(failed) if failed else ''}")
        worst = max(worst, EXIT[report.status])
    return worst


def cmd_export_dot(args) -> int:
    ts = _triples(args)
    config = _config(args)
    for t in ts:
        p = build_pipeline(t, config)
        text = export_dot(seed_quiver(p.seed_mat5), f"case{case_number(t)}")
        if args.out:
            out = _outdir(args, t, len(ts) > 1)
            (out / "quiver.dot").write_text(text)
        else:
            sys.stdout.write(text)
    return 0


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    data = json.loads(Path(path).read_text())
    return {k.replace("-", "_"): v for k, v in data.items()}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bdcluster", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="the 13 SL_5 triples")
    for name in ("build", "verify", "export-dot"):
        p = sub.add_parser(name)
        sel = p.add_mutually_exclusive_group()
        sel.add_argument("--triple", help="g1=1,2;g2=2,3;map=1:2,2:3")
        sel.add_argument("--case", type=int, choices=range(1, 14), metavar="1..13")
        sel.add_argument("--all", action="store_true")
        p.add_argument("--config", help="JSON file with default values for these flags")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--points", type=int, default=8)
        p.add_argument("--symbolic-cap", type=int, default=6)
        p.add_argument("--mmax", type=int, default=3)
        p.add_argument("--out", default=None if name == "export-dot" else "out")
        if name == "verify":
            p.add_argument("--skip-laurent", action="store_true")
            p.add_argument("--skip-semiinv", action="store_true")
            p.add_argument("--corrupt-b", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list":
        print(cmd_list())
        return 0
    defaults = _load_config(args.config)
    if defaults:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    if args.seed < 0 or args.points < 2 or args.mmax < 0 or args.symbolic_cap < 0:
        parser.error("--seed, --mmax and --symbolic-cap must be >= 0 and --points >= 2")
    handler = {"build": cmd_build, "verify": cmd_verify, "export-dot": cmd_export_dot}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
