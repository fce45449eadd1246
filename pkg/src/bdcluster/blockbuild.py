"""Extended block-diagonal matrices built from corner submatrices of X and Y,
and the minor functions they define.

Building blocks (n = 5):

* ``U_i`` = rows i..n, columns 1..n+1-i of X;
* ``V_j`` = rows 1..n+1-j, columns j..n of Y.

Positive extension widens the interval of the form {1..k}; negative
extension widens the one of the form {l..n}.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactalg import (MPoly, SingularMatrixError, det_and_inverse, det_bareiss, flint_context, from_flint,
                       leading_minors_generic, nullspace, rank, transpose)
from .liealg import BDTriple, is_orientable

N = 5
Cell = tuple  # (source, p, q) with source in {"X", "Y"}, or None for a literal zero


class BlockError(ValueError):
    pass


class NonOrientableError(BlockError):
    pass


@dataclass(frozen=True)
class SubmatrixRef:
    kind: str          # "U" (from X) or "V" (from Y)
    index: int         # i of U_i or j of V_j
    rows: tuple        # inclusive 1-based interval
    cols: tuple

    @property
    def source(self) -> str:
        return "X" if self.kind == "U" else "Y"

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows[1] - self.rows[0] + 1, self.cols[1] - self.cols[0] + 1

    def cell(self, a: int, b: int) -> Cell:
        return self.source, self.rows[0] + a, self.cols[0] + b

    def __str__(self) -> str:
        return f"{self.source}[{self.rows[0]}..{self.rows[1]}][{self.cols[0]}..{self.cols[1]}]"


def building_block(kind: str, index: int) -> SubmatrixRef:
    if not 1 <= index <= N:
        raise BlockError(f"block index {index} out of range 1..{N}")
    if kind == "U":
        return SubmatrixRef("U", index, (index, N), (1, N + 1 - index))
    if kind == "V":
        return SubmatrixRef("V", index, (1, N + 1 - index), (index, N))
    raise BlockError(f"unknown block kind {kind!r}")


def xi(a) -> int:
    return N + 1 - _last(a).index


def sigma(a) -> int:
    return 1 if _last(a).kind == "U" else -1


def sigma_bar(a) -> int:
    return (3 - sigma(a)) // 2


def _last(a) -> SubmatrixRef:
    return a if isinstance(a, SubmatrixRef) else a.blocks[-1].ref


def extend_ref(ref: SubmatrixRef, t: int) -> SubmatrixRef:
    """Widen the {1..k} interval by t > 0, or the {l..n} interval by |t|."""
    if t == 0:
        return ref
    if ref.kind == "U":
        if t > 0:
            new = replace(ref, cols=(ref.cols[0], ref.cols[1] + t))
        else:
            new = replace(ref, rows=(ref.rows[0] + t, ref.rows[1]))
    else:
        if t > 0:
            new = replace(ref, rows=(ref.rows[0], ref.rows[1] + t))
        else:
            new = replace(ref, cols=(ref.cols[0] + t, ref.cols[1]))
    if min(new.rows[0], new.cols[0]) < 1 or max(new.rows[1], new.cols[1]) > N:
        raise BlockError(f"extension of {ref} by {t} leaves 1..{N}")
    return new


@dataclass(frozen=True)
class PlacedBlock:
    ref: SubmatrixRef
    row: int   # 0-based offset of the block's top-left cell
    col: int


@dataclass(frozen=True)
class ExtBlockMatrix:
    blocks: tuple
    size: int

    @classmethod
    def single(cls, ref: SubmatrixRef) -> "ExtBlockMatrix":
        r, c = ref.shape
        if r != c:
            raise BlockError("a one-block matrix must be square")
        return cls((PlacedBlock(ref, 0, 0),), r)

    @cached_property
    def grid(self) -> list[list[Cell]]:
        g: list[list[Cell]] = [[None] * self.size for _ in range(self.size)]
        for pb in self.blocks:
            nr, nc = pb.ref.shape
            for a in range(nr):
                for b in range(nc):
                    i, j = pb.row + a, pb.col + b
                    if not (0 <= i < self.size and 0 <= j < self.size):
                        raise BlockError("block extends outside the matrix")
                    if g[i][j] is not None:
                        raise BlockError(f"blocks overlap at ({i + 1}, {j + 1})")
                    g[i][j] = pb.ref.cell(a, b)
        return g

    def diagonal(self) -> list[Cell]:
        return [self.grid[i][i] for i in range(self.size)]

    def render(self) -> str:
        return render_grid(self.grid)


def render_grid(grid: Sequence[Sequence[Cell]]) -> str:
    cells = [["0" if c is None else f"{c[0].lower()}{c[1]}{c[2]}" for c in row] for row in grid]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def parse_grid(text: str) -> list[list[Cell]]:
    rows = []
    for line in text.strip().splitlines():
        row = []
        for tok in line.split():
            if tok == "0":
                row.append(None)
            else:
                row.append((tok[0].upper(), int(tok[1]), int(tok[2])))
        rows.append(row)
    return rows


def extend(a, t: int):
    """Extend a block, or the last block of an extended block matrix."""
    if isinstance(a, SubmatrixRef):
        return extend_ref(a, t)
    if t < 0 and len(a.blocks) == 1:
        raise BlockError("the first block may not be extended in the negative direction")
    *head, last = a.blocks
    ref = extend_ref(last.ref, t)
    row, col = last.row, last.col
    if t < 0:
        if ref.kind == "U":
            row += t
        else:
            col += t
    return ExtBlockMatrix(tuple(head) + (PlacedBlock(ref, row, col),), a.size)


def glue_and_extend(a: ExtBlockMatrix, b: SubmatrixRef, t_plus: int, t_minus: int) -> ExtBlockMatrix:
    """Glue b below-right of a, extend a's last block by t_plus and b by -t_minus."""
    nb, _ = b.shape
    *head, last = a.blocks
    grown = PlacedBlock(extend_ref(last.ref, t_plus), last.row, last.col)
    newb = extend_ref(b, -t_minus)
    row, col = a.size, a.size
    if b.kind == "U":
        row -= t_minus
    else:
        col -= t_minus
    m = ExtBlockMatrix(tuple(head) + (grown, PlacedBlock(newb, row, col)), a.size + nb)
    m.grid  # noqa: B018  (validates placement)
    return m


def extension_numbers(a, t: BDTriple) -> tuple[int, int]:
    """(t+, t-) from the path through xi(a) in the Dynkin diagram restricted
    to Gamma_{sigma_bar(a)}."""
    alpha = xi(a)
    gam = t.gamma_set(sigma_bar(a))
    lo = hi = alpha
    while lo - 1 in gam:
        lo -= 1
    while hi + 1 in gam:
        hi += 1
    if alpha not in gam:
        return 1, 1
    return hi - alpha + 1, alpha - lo + 1


@dataclass
class BuildTrace:
    start: SubmatrixRef
    steps: list = field(default_factory=list)  # A_0, A_1, ... as ExtBlockMatrix


def starting_blocks(t: BDTriple) -> list[SubmatrixRef]:
    """X, Y, then V_j (j-1 not in Gamma2) and U_i (i-1 not in Gamma1) by index."""
    out = [building_block("U", 1), building_block("V", 1)]
    out += [building_block("V", j) for j in range(2, N + 1) if j - 1 not in t.gamma2]
    out += [building_block("U", i) for i in range(2, N + 1) if i - 1 not in t.gamma1]
    return out


def build_M(t: BDTriple, traces: list | None = None) -> list[ExtBlockMatrix]:
    if not is_orientable(t):
        raise NonOrientableError("build_M needs an orientable triple; use build_nonorientable")
    out = []
    cap = N * max(1, len(t.gamma1)) + 1
    for start in starting_blocks(t):
        a = ExtBlockMatrix.single(start)
        trace = BuildTrace(start, [a])
        for _ in range(cap):
            alpha = xi(a)
            if alpha not in t.gamma_set(sigma_bar(a)):
                break
            if sigma(a) == 1:
                nxt = building_block("V", t.gmap[alpha] + 1)
            else:
                nxt = building_block("U", t.ginv[alpha] + 1)
            tp, tm = extension_numbers(a, t)
            a = glue_and_extend(a, nxt, tp, tm)
            trace.steps.append(a)
        else:
            raise RuntimeError(f"construction from {start} did not terminate")
        out.append(a)
        if traces is not None:
            traces.append(trace)
    return out


# -- the fixed matrices of the non-orientable triple 1->4, 2->3 -------------------

_NONORIENTABLE_M = [
    "\n".join(" ".join(f"x{p}{q}" for q in range(1, 6)) for p in range(1, 6)),
    "\n".join(" ".join(f"y{p}{q}" for q in range(1, 6)) for p in range(1, 6)),
    """
    y12 y13 y14 y15 0 0 0 0
    y22 y23 y24 y25 0 0 0 0
    y32 y33 y34 y35 0 0 0 0
    y42 y43 y44 y45 x11 x12 x13 x14
    y52 y53 y54 y55 x21 x22 x23 x24
    0 0 0 0 x31 x32 x33 x34
    0 0 0 0 x41 x42 x43 x44
    0 0 0 0 x51 x52 x53 x54
    """,
    """
    y13 y14 y15 0 0 0
    y23 y24 y25 0 0 0
    y33 y34 y35 x21 x22 x23
    y43 y44 y45 x31 x32 x33
    0 0 0 x41 x42 x43
    0 0 0 x51 x52 x53
    """,
    """
    x41 x42 x43 0
    x51 x52 x53 0
    0 y13 y14 y15
    0 y23 y24 y25
    """,
    """
    x51 x52
    y14 y15
    """,
]

_NONORIENTABLE_MPRIME = [
    "0",
    "0",
    """
    0 0 0 0 x11 x12 x13 x14
    0 0 0 0 x21 x22 x23 x24
    y12 y13 y14 y15 0 0 0 0
    y22 y23 y24 y25 0 0 0 0
    y42 y43 y44 y45 0 0 0 0
    y52 y53 y54 y55 0 0 0 0
    0 0 0 0 x41 x42 x43 x44
    0 0 0 0 x51 x52 x53 x54
    """,
    """
    0 0 0 x11 x12 x13
    y13 y14 y15 0 0 0
    y23 y24 y25 0 0 0
    y53 y54 y55 0 0 0
    0 0 0 x41 x42 x43
    0 0 0 x51 x52 x53
    """,
    """
    0 0 x42 x43
    0 0 x52 x53
    y13 y14 0 0
    y23 y24 0 0
    """,
    """
    0 x53
    y13 0
    """,
]


def nonorientable_matrices() -> tuple[list[list[list[Cell]]], list[list[list[Cell]]]]:
    return ([parse_grid(s) for s in _NONORIENTABLE_M], [parse_grid(s) for s in _NONORIENTABLE_MPRIME])


# -- minor functions ---------------------------------------------------------------

def _numeric(grid, r: int, px, py):
    out = []
    for row in grid[:r]:
        vals = []
        for c in row[:r]:
            if c is None:
                vals.append(0)
            else:
                src, p, q = c
                vals.append((px if src == "X" else py)[p - 1][q - 1])
        out.append(vals)
    return out


def adjugate(m: Sequence[Sequence]) -> tuple[Fraction, list[list[Fraction]]]:
    """Determinant and adjugate, also for singular matrices."""
    n = len(m)
    if n == 1:
        return Fraction(m[0][0]), [[Fraction(1)]]
    try:
        d, inv = det_and_inverse(m)
        return d, [[d * v for v in row] for row in inv]
    except SingularMatrixError:
        pass
    if rank(m) < n - 1:
        return Fraction(0), [[Fraction(0)] * n for _ in range(n)]
    v = nullspace(m)[0]
    u = nullspace(transpose(m))[0]
    i = next(k for k in range(n) if v[k])
    j = next(k for k in range(n) if u[k])
    sub = [row[:i] + row[i + 1:] for k, row in enumerate(m) if k != j]
    cof = (-1) ** (i + j) * Fraction(det_bareiss(sub))
    c = cof / (v[i] * u[j])
    return Fraction(0), [[c * v[a] * u[b] for b in range(n)] for a in range(n)]


@dataclass(frozen=True)
class MinorTerm:
    sign: int
    grid: tuple          # full matrix grid (tuple of tuples of Cell)
    size: int            # leading minor size r


@dataclass(frozen=True)
class MinorFunction:
    label: tuple                # (i, j)
    terms: tuple                # MinorTerm...
    source: int                 # index of the defining matrix in the matrix set
    size: int
    stable: bool = False

    @property
    def name(self) -> str:
        return f"f{self.label[0]}{self.label[1]}"

    @property
    def degree(self) -> int:
        return self.size

    def value_and_gradient(self, px, py=None, split: bool = False):
        """Value and gradient at X = px (and Y = py; Y := X when omitted).

        The gradient is a 5x5 matrix in the x entries, or a pair (dX, dY)
        when ``split`` is set.
        """
        py_ = px if py is None else py
        gx = [[Fraction(0)] * N for _ in range(N)]
        gy = [[Fraction(0)] * N for _ in range(N)] if split else gx
        total = Fraction(0)
        for term in self.terms:
            r = term.size
            m = _numeric(term.grid, r, px, py_)
            d, adj = adjugate(m)
            total += term.sign * d
            for a in range(r):
                for b in range(r):
                    c = term.grid[a][b]
                    if c is None:
                        continue
                    w = adj[b][a]
                    if w:
                        tgt = gx if c[0] == "X" else gy
                        tgt[c[1] - 1][c[2] - 1] += term.sign * w
        return total, ((gx, gy) if split else gx)

    def value(self, px, py=None) -> Fraction:
        total = Fraction(0)
        for term in self.terms:
            total += term.sign * Fraction(det_bareiss(_numeric(term.grid, term.size, px, px if py is None else py)))
        return total

    def flint(self, double: bool = False):
        """The function as a FLINT integer polynomial (on the double when asked)."""
        acc = None
        for term in self.terms:
            p = _grid_minors(term.grid, double)[term.size - 1]
            p = p if term.sign > 0 else -p
            acc = p if acc is None else acc + p
        return acc

    def double_polynomial(self) -> MPoly:
        """The function on the double, X and Y kept distinct."""
        return from_flint(self.flint(double=True))

    def polynomial(self) -> MPoly:
        return from_flint(self.flint())

    def __str__(self) -> str:
        return self.name


_MINOR_CACHE: dict = {}


def _grid_minors(grid, double: bool = False) -> list:
    key = (grid, double)
    hit = _MINOR_CACHE.get(key)
    if hit is None:
        ctx = flint_context(double)
        gens = ctx.gens()
        zero = ctx.from_dict({})
        sym = []
        for row in grid:
            out = []
            for c in row:
                if c is None:
                    out.append(zero)
                else:
                    idx = 5 * (c[1] - 1) + c[2] - 1
                    out.append(gens[idx + 25 if double and c[0] == "Y" else idx])
            sym.append(out)
        hit = leading_minors_generic(sym, ctx.from_dict({(0,) * ctx.nvars(): 1}))
        if len(_MINOR_CACHE) > 32:
            _MINOR_CACHE.clear()
        _MINOR_CACHE[key] = hit
    return hit


def _freeze(grid) -> tuple:
    return tuple(tuple(row) for row in grid)


def rho_map(grids: Sequence[Sequence[Sequence[Cell]]]) -> dict[tuple[int, int], tuple[int, int]]:
    """label (i, j) -> (matrix index, minor size).

    The minors of X and of Y coincide after Y := X, so X's are kept.
    """
    out: dict = {}
    for idx, grid in enumerate(grids):
        for r in range(1, len(grid) + 1):
            c = grid[r - 1][r - 1]
            if c is None:
                raise BlockError(f"zero on the diagonal of matrix {idx + 1}")
            label = (c[1], c[2])
            if label in out:
                prev_idx, prev_r = out[label]
                same_xy = prev_r == r and _is_full(grids[prev_idx]) and _is_full(grid)
                if same_xy:
                    continue
                raise BlockError(f"rho is not injective: {label} from matrices {prev_idx + 1} and {idx + 1}")
            out[label] = (idx, r)
    missing = {(i, j) for i in range(1, N + 1) for j in range(1, N + 1)} - set(out)
    if missing:
        raise BlockError(f"rho is not surjective: missing {sorted(missing)}")
    return out


def _is_full(grid) -> bool:
    return len(grid) == N and all(c is not None and (c[1], c[2]) == (a + 1, b + 1)
                                  for a, row in enumerate(grid) for b, c in enumerate(row))


def minor_functions(grids: Sequence, stable: frozenset = frozenset(), primes: Sequence | None = None,
                    include_det: bool = False) -> list[MinorFunction]:
    """The 24 functions f_ij (row-major, f_55 = det X omitted unless asked).

    ``primes`` supplies the second matrix of each signed sum
    det(M_j) - (-1)^j det(M'_j) (matrices numbered from 1). The sign goes
    with the sign of the Lie algebra map extending gamma in the R-matrix.
    """
    frozen = [_freeze(g) for g in grids]
    frozen_primes = [_freeze(g) for g in primes] if primes is not None else None
    rho = rho_map(frozen)
    out = []
    for label in sorted(rho):
        if label == (N, N) and not include_det:
            continue
        idx, r = rho[label]
        terms = [MinorTerm(1, frozen[idx], r)]
        if frozen_primes is not None:
            mp = frozen_primes[idx]
            if r <= len(mp):
                terms.append(MinorTerm((-1) ** idx, mp, r))
        out.append(MinorFunction(label, tuple(terms), idx, r, label in stable))
    return out


def build_nonorientable(t: BDTriple) -> tuple[list, list]:
    """The fixed matrices M_j, M'_j for the triple 1->4, 2->3."""
    if is_orientable(t) or t.n != N or t.gmap != {1: 4, 2: 3}:
        raise BlockError("the signed-sum construction is only defined for 1->4, 2->3")
    return nonorientable_matrices()
