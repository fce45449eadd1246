"""Seeds, exchange matrices, mutation and quivers for the minor-function
clusters on SL_5 (and on Mat_5 once det X is adjoined)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .blockbuild import (MinorFunction, MinorTerm, build_M, build_nonorientable, minor_functions)
from .exactalg import MPoly, RatFunc, SingularMatrixError, invert, matmul, primitive_integer_multiple, rank
from .liealg import BDTriple, is_orientable, k_T
from .rmatrix import (Bracket, NotLogCanonicalError, PointSampler, RMatrix, SamplingError, assemble_r,
                      fields_at, solve_r0)

N = 5


class ClusterError(ValueError):
    pass


def stable_set(t: BDTriple) -> frozenset:
    """Labels of the stable variables: f_5m (m not in Gamma1), f_k5 (k not in Gamma2)."""
    return frozenset({(N, m) for m in range(1, N) if m not in t.gamma1}
                     | {(k, N) for k in range(1, N) if k not in t.gamma2})


@dataclass(frozen=True)
class Structure:
    """The matrix set and the functions built from a triple."""
    triple: BDTriple
    matrices: tuple          # grids
    primes: tuple | None     # second grids of the signed sums (non-orientable only)
    functions: tuple         # 24 MinorFunction, row-major, det X excluded
    det: MinorFunction

    @property
    def labels(self) -> list[tuple[int, int]]:
        return [f.label for f in self.functions]

    @property
    def stable_mask(self) -> list[bool]:
        return [f.stable for f in self.functions]


def build_structure(t: BDTriple) -> Structure:
    if is_orientable(t):
        grids = [m.grid for m in build_M(t)]
        primes = None
    else:
        grids, primes = build_nonorientable(t)
    stable = stable_set(t)
    fs = minor_functions(grids, stable, primes, include_det=True)
    det = next(f for f in fs if f.label == (N, N))
    body = tuple(f for f in fs if f.label != (N, N))
    return Structure(t, tuple(tuple(map(tuple, g)) for g in grids),
                     None if primes is None else tuple(tuple(map(tuple, g)) for g in primes), body, det)


# -- Poisson coefficients ----------------------------------------------------------

def _sample_point(fs: Sequence, sampler: PointSampler, max_tries: int = 200):
    for _ in range(max_tries):
        pt = sampler.matrix()
        data = [f.value_and_gradient(pt) for f in fs]
        if all(v for v, _ in data):
            return pt, data
    raise SamplingError("no sampled point avoids the zero sets of all functions")


def omega_at(bracket: Bracket, pt, data) -> list[list[Fraction]]:
    fields = [fields_at(g, pt) for _, g in data]
    n = len(data)
    w = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = bracket.at_point(fields[i], fields[j]) / (data[i][0] * data[j][0])
            w[i][j], w[j][i] = v, -v
    return w


def omega_matrix(r: RMatrix, fs: Sequence, sampler: PointSampler | None = None, points: int = 8,
                 scale: Fraction = Fraction(1)) -> list[list[Fraction]]:
    """Omega = ({f_i, f_j} / f_i f_j), required to agree at every sampled point."""
    sampler = sampler or PointSampler()
    bracket = Bracket(r, Fraction(scale))
    first = None
    for _ in range(points):
        pt, data = _sample_point(fs, sampler)
        w = omega_at(bracket, pt, data)
        if first is None:
            first = (w, pt)
            continue
        for i, j in itertools.combinations(range(len(fs)), 2):
            if w[i][j] != first[0][i][j]:
                name = lambda f: getattr(f, "name", str(f))  # noqa: E731
                raise NotLogCanonicalError(
                    f"{{{name(fs[i])}, {name(fs[j])}}} / ({name(fs[i])} {name(fs[j])}) is not constant: "
                    f"{first[0][i][j]} vs {w[i][j]}",
                    [(first[1], first[0][i][j]), (pt, w[i][j])])
    return first[0]


def _r0_candidates(dim: int, bound: int = 2):
    """Coefficient vectors for members of the r0 family, smallest first."""
    yield ()
    for weight in range(1, dim + 1):
        for support in itertools.combinations(range(dim), weight):
            for signs in itertools.product(range(1, bound + 1), repeat=weight):
                for flips in itertools.product((1, -1), repeat=weight):
                    v = [0] * dim
                    for k, s, f in zip(support, signs, flips):
                        v[k] = s * f
                    yield tuple(v)


@dataclass(frozen=True)
class R0Choice:
    coeffs: tuple            # over the freedom basis of the r0 family; () is the pivot solution
    r: RMatrix
    omega: tuple             # one-point Omega (unscaled)


def regular_r0(t: BDTriple, fs: Sequence, sampler: PointSampler | None = None, limit: int = 500) -> R0Choice:
    """First member of the r0 family (pivot solution first) with invertible Omega.

    Omega is log-canonical for every member, so its rank is read off at a
    single point.
    """
    space = solve_r0(t)
    pt, data = _sample_point(fs, sampler or PointSampler(seed=7))
    for coeffs in itertools.islice(_r0_candidates(space.dimension), limit):
        r = assemble_r(t, space.member(coeffs))
        w = omega_at(Bracket(r), pt, data)
        if rank(w) == len(fs):
            return R0Choice(tuple(coeffs), r, tuple(map(tuple, w)))
    raise ClusterError(f"no member of the r0 family among the first {limit} gives an invertible Omega")


def calibration(omega: Sequence[Sequence[Fraction]]) -> Fraction:
    """Smallest positive rational making every entry an integer."""
    return primitive_integer_multiple([v for row in omega for v in row])


# -- exchange matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class Seed:
    variables: tuple                 # MinorFunction (or anything with .name) in column order
    exchange: tuple                  # rows for the mutable variables, in column order
    stable_mask: tuple

    @property
    def mutable(self) -> list[int]:
        return [i for i, s in enumerate(self.stable_mask) if not s]

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    def b(self, i: int, j: int) -> int:
        """Entry for mutable variable i and any variable j."""
        return self.exchange[self.mutable.index(i)][j]

    def principal(self) -> list[list[int]]:
        mut = self.mutable
        return [[row[j] for j in mut] for row in self.exchange]

    def mutate(self, k: int) -> "Seed":
        mut = self.mutable
        if k not in mut:
            raise ClusterError(f"variable {k} is stable or out of range")
        return replace(self, exchange=tuple(map(tuple, _mutate_rows(self.exchange, mut, k))))

    def exchange_monomials(self, k: int) -> tuple[dict, dict]:
        row = self.exchange[self.mutable.index(k)]
        plus = {j: b for j, b in enumerate(row) if b > 0}
        minus = {j: -b for j, b in enumerate(row) if b < 0}
        return plus, minus


def _mutate_rows(rows: Sequence[Sequence[int]], row_vars: Sequence[int], k: int) -> list[list[int]]:
    rk = row_vars.index(k)
    out = []
    for ri, row in enumerate(rows):
        new = []
        for j, b in enumerate(row):
            if ri == rk or j == k:
                new.append(-b)
            else:
                bik, bkj = row[k], rows[rk][j]
                new.append(b + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(new)
    return out


def mutate_matrix(b: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Matrix mutation; rows 0..m-1 of an m x n matrix index its first m columns."""
    m = len(b)
    if not 0 <= k < m:
        raise ClusterError(f"direction {k} is not a mutable index (0..{m - 1})")
    return _mutate_rows(b, list(range(m)), k)


def exchange_matrix(omega: Sequence[Sequence[Fraction]], stable_mask: Sequence[bool]
                    ) -> tuple[list[list[int]], Fraction]:
    """B~: the mutable rows of Omega^{-1}, scaled by the smallest positive
    rational c making them integral. Returns (B~, c); B~ Omega = [c I, 0]
    with the identity on the mutable columns."""
    try:
        inv = invert(omega)
    except SingularMatrixError as exc:
        raise ClusterError("Omega is singular") from exc
    mut = [i for i, s in enumerate(stable_mask) if not s]
    rows = [inv[i] for i in mut]
    c = primitive_integer_multiple([v for row in rows for v in row])
    bt = [[int(v * c) for v in row] for row in rows]
    check = compatibility_defect(bt, omega, stable_mask)
    if check is not None:
        raise ClusterError(f"B~ Omega is not of the form [D 0]: {check}")
    return bt, c


def compatibility_defect(bt, omega, stable_mask):
    """None when B~ Omega = [D 0] with D diagonal positive (on the mutable
    columns), otherwise a description of the first offending entry."""
    mut = [i for i, s in enumerate(stable_mask) if not s]
    prod = matmul(bt, omega)
    for r, i in enumerate(mut):
        for j in range(len(omega)):
            v = prod[r][j]
            if j == i:
                if v <= 0:
                    return f"diagonal entry for {i} is {v}"
            elif v:
                return f"entry ({i}, {j}) is {v}"
    return None


def is_skew(m: Sequence[Sequence]) -> bool:
    return all(m[i][j] == -m[j][i] for i in range(len(m)) for j in range(len(m)))


def make_seed(structure: Structure, bt) -> Seed:
    return Seed(tuple(structure.functions), tuple(map(tuple, bt)), tuple(structure.stable_mask))


def extend_to_mat5(seed: Seed, det_var) -> Seed:
    """Adjoin det X as a stable variable with the column that makes every
    exchange relation homogeneous."""
    col = []
    for row in seed.exchange:
        s = sum(b * v.degree for b, v in zip(row, seed.variables))
        if s % N:
            raise ClusterError(f"no homogenizing det X column: weighted row sum {s} is not a multiple of {N}")
        col.append(-s // N)
    rows = tuple(tuple(row) + (c,) for row, c in zip(seed.exchange, col))
    return Seed(seed.variables + (det_var,), rows, seed.stable_mask + (True,))


def mutate_cluster(seed: Seed, k: int) -> tuple[RatFunc, Seed]:
    """The new variable (M+ + M-)/f_k, symbolically, and the mutated seed."""
    plus, minus = seed.exchange_monomials(k)
    num = exchange_numerator(seed, plus, minus)
    fk = seed.variables[k].polynomial()
    if fk.is_zero():
        raise ClusterError(f"{seed.variables[k].name} is identically zero")
    return RatFunc(num, fk), seed.mutate(k)


def exchange_numerator(seed: Seed, plus: dict, minus: dict) -> MPoly:
    polys = {j: seed.variables[j].polynomial() for j in set(plus) | set(minus)}
    p, m = MPoly.constant(1), MPoly.constant(1)
    for j, e in plus.items():
        p = p * polys[j] ** e
    for j, e in minus.items():
        m = m * polys[j] ** e
    return p + m


# -- quivers -------------------------------------------------------------------------

@dataclass
class Quiver:
    vertices: list                    # names in variable order
    mutable: dict                     # name -> bool
    edges: dict = field(default_factory=dict)   # (u, v) -> positive weight

    def add(self, u: str, v: str, w: int = 1) -> None:
        """Add w arrows u -> v, cancelling against arrows v -> u."""
        back = self.edges.pop((v, u), 0)
        net = w - back
        if net > 0:
            self.edges[(u, v)] = self.edges.get((u, v), 0) + net
        elif net < 0:
            self.edges[(v, u)] = -net

    def remove(self, u: str, v: str) -> None:
        self.edges.pop((u, v), None)
        self.edges.pop((v, u), None)

    def copy(self) -> "Quiver":
        return Quiver(list(self.vertices), dict(self.mutable), dict(self.edges))

    def has_edge_between(self, u: str, v: str) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def same_as(self, other: "Quiver") -> bool:
        return (self.vertices == other.vertices and self.mutable == other.mutable
                and self.edges == other.edges)

    def difference(self, other: "Quiver") -> dict:
        keys = set(self.edges) | set(other.edges)
        edges = {k: (self.edges.get(k, 0), other.edges.get(k, 0)) for k in sorted(keys)
                 if self.edges.get(k, 0) != other.edges.get(k, 0)}
        mut = {v: (self.mutable.get(v), other.mutable.get(v)) for v in self.vertices
               if self.mutable.get(v) != other.mutable.get(v)}
        return {"edges": edges, "mutability": mut}

    def is_planar(self) -> bool:
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return nx.check_planarity(g)[0]


def quiver_from_B(bt: Sequence[Sequence[int]], names: Sequence[str], stable_mask: Sequence[bool]) -> Quiver:
    mut = [i for i, s in enumerate(stable_mask) if not s]
    q = Quiver(list(names), {n: not s for n, s in zip(names, stable_mask)})
    for r, i in enumerate(mut):
        for j, b in enumerate(bt[r]):
            if b > 0:
                q.edges[(names[i], names[j])] = b
            elif b < 0 and stable_mask[j]:
                q.edges[(names[j], names[i])] = -b
    return q


def seed_quiver(seed: Seed) -> Quiver:
    return quiver_from_B(seed.exchange, seed.names, seed.stable_mask)


def _f(i: int, j: int) -> str:
    return f"f{i}{j}"


def qt_rules(t: BDTriple, standard: Quiver) -> Quiver:
    """The standard quiver edited by the per-root rules for Gamma1 and Gamma2."""
    q = standard.copy()
    g, gi = t.gmap, t.ginv
    for i in sorted(t.gamma1):
        v = _f(N, i)
        q.mutable[v] = True
        q.add(v, _f(1, g[i]))
        q.add(v, _f(N, i + 1))
        q.add(_f(1, g[i] + 1), v)
    for j in sorted(t.gamma2):
        v = _f(j, N)
        q.mutable[v] = True
        q.add(v, _f(gi[j], 1))
        q.add(v, _f(j + 1, N))
        q.add(_f(gi[j] + 1, 1), v)
    if not is_orientable(t):
        q.remove(_f(3, 5), _f(4, 5))
        q.remove(_f(5, 1), _f(5, 2))
    return q


def export_dot(q: Quiver, name: str = "quiver") -> str:
    lines = [f"digraph {name} {{"]
    for v in q.vertices:
        shape = "circle" if q.mutable.get(v, True) else "box"
        lines.append(f'  {v} [shape={shape}];')
    for (u, v) in sorted(q.edges, key=lambda e: (q.vertices.index(e[0]), q.vertices.index(e[1]))):
        w = q.edges[(u, v)]
        lines.append(f"  {u} -> {v}" + (f' [label="{w}"];' if w > 1 else ";"))
    lines.append("}")
    return "\n".join(lines) + "\n"
