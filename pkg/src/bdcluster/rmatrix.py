"""Classical R-matrices of Belavin-Drinfeld type on sl_n and the Sklyanin
bracket they induce on functions of a matrix X.

Tensors are stored in the elementary basis of gl_n: the key (p, q, r, s)
stands for E_pq (x) E_rs.  All indices are 1-based.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exactalg import MPoly, Scalar, det_bareiss, solve_affine, x_index
from .liealg import BDTriple, apply_gamma, positive_roots, root_order

Tensor = dict  # (p, q, r, s) -> Fraction


class RMatrixError(ArithmeticError):
    pass


class NotLogCanonicalError(ArithmeticError):
    def __init__(self, message: str, witnesses=()):
        super().__init__(message)
        self.witnesses = list(witnesses)


class SamplingError(RuntimeError):
    pass


# -- tensor algebra ------------------------------------------------------------

def _clean(t: Mapping) -> Tensor:
    return {k: v for k, v in t.items() if v}


def tensor_add(*ts: Mapping, scale: Sequence[Scalar] | None = None) -> Tensor:
    out: dict = {}
    for idx, t in enumerate(ts):
        c = 1 if scale is None else scale[idx]
        for k, v in t.items():
            out[k] = out.get(k, 0) + c * v
    return _clean(out)


def swap(t: Mapping) -> Tensor:
    """r -> r^21."""
    return {(r, s, p, q): v for (p, q, r, s), v in t.items()}


def outer(a: Mapping, b: Mapping, c: Scalar = 1) -> Tensor:
    """a (x) b for matrices given as {(p, q): coeff}."""
    return _clean({(p, q, r, s): c * u * v for (p, q), u in a.items() for (r, s), v in b.items()})


def cartan_part(n: int) -> Tensor:
    """t_0: the h (x) h component of the Casimir for the trace form."""
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            out[(i, i, j, j)] = Fraction(int(i == j)) - Fraction(1, n)
    return _clean(out)


def casimir(n: int) -> Tensor:
    t = cartan_part(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                t[(i, j, j, i)] = Fraction(1)
    return t


def _bracket(a: tuple, b: tuple) -> list[tuple[tuple, int]]:
    """[E_a, E_b] as a list of (index pair, sign)."""
    (p, q), (r, s) = a, b
    out = []
    if q == r:
        out.append(((p, s), 1))
    if s == p:
        out.append(((r, q), -1))
    return out


def cybe(t: Mapping) -> dict:
    """[[r, r]] in gl_n^(x)3, keyed by ((a), (b), (c)) index pairs."""
    out: dict = {}
    items = [((p, q), (r, s), v) for (p, q, r, s), v in t.items()]
    for (ai, bi, ci), (aj, bj, cj) in itertools.product(items, repeat=2):
        c = ci * cj
        for e, sg in _bracket(ai, aj):
            k = (e, bi, bj)
            out[k] = out.get(k, 0) + sg * c
        for e, sg in _bracket(bi, aj):
            k = (ai, e, bj)
            out[k] = out.get(k, 0) + sg * c
        for e, sg in _bracket(bi, bj):
            k = (ai, aj, e)
            out[k] = out.get(k, 0) + sg * c
    return _clean(out)


def cybe_check(t: Mapping) -> bool:
    return not cybe(t)


# -- Belavin-Drinfeld data -------------------------------------------------------

def _commutator(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            for e, sg in _bracket(ka, kb):
                out[e] = out.get(e, 0) + sg * va * vb
    return {k: v for k, v in out.items() if v}


def gamma_root_vector(t: BDTriple, root) -> tuple[tuple[int, int], int]:
    """Image of e_root = E_{i,j+1} under the Lie algebra map extending gamma.

    Returns (index pair, sign); the sign is -1 exactly when gamma reverses
    the orientation of a string of simple roots.
    """
    i, j = root
    g = t.gmap
    acc = {(g[i], g[i] + 1): 1}
    for k in range(i + 1, j + 1):
        acc = _commutator(acc, {(g[k], g[k] + 1): 1})
    (pair, sign), = acc.items()
    return pair, sign


def _cartan_matrix(n: int) -> list[list[int]]:
    return [[2 if i == k else -1 if abs(i - k) == 1 else 0 for k in range(n - 1)] for i in range(n - 1)]


def _h_tensor(coeffs: Sequence[Sequence[Scalar]], n: int) -> Tensor:
    """sum_ab c_ab H_a (x) H_b with H_a = E_aa - E_{a+1,a+1}."""
    out: dict = {}
    for a in range(n - 1):
        for b in range(n - 1):
            c = coeffs[a][b]
            if not c:
                continue
            for (p, sp), (r, sr) in itertools.product(((a + 1, 1), (a + 2, -1)), ((b + 1, 1), (b + 2, -1))):
                k = (p, p, r, r)
                out[k] = out.get(k, 0) + c * sp * sr
    return _clean(out)


def _t0_coeffs(n: int) -> list[list[Fraction]]:
    from .exactalg import invert
    return invert(_cartan_matrix(n))


def _skew_pairs(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n - 1) for b in range(a + 1, n - 1)]


def r0_from_skew(n: int, skew: Sequence[Scalar]) -> Tensor:
    """r_0 = t_0/2 + sum_{a<b} s_ab (H_a (x) H_b - H_b (x) H_a)."""
    coeffs = [[c / 2 for c in row] for row in _t0_coeffs(n)]
    for (a, b), s in zip(_skew_pairs(n), skew):
        coeffs[a][b] += s
        coeffs[b][a] -= s
    return _h_tensor(coeffs, n)


@dataclass(frozen=True)
class R0Space:
    """Affine solution set r_0 = particular + span(freedom), as skew coordinates."""
    n: int
    particular: tuple
    freedom: tuple

    def member(self, coeffs: Sequence[Scalar] = ()) -> Tensor:
        s = list(self.particular)
        for c, v in zip(coeffs, self.freedom):
            s = [a + c * b for a, b in zip(s, v)]
        return r0_from_skew(self.n, s)

    @property
    def dimension(self) -> int:
        return len(self.freedom)


def solve_r0(t: BDTriple) -> R0Space:
    """Solve (gamma(a) (x) 1) r0 + (1 (x) a) r0 = 0 for a in Gamma1 and
    r0 + r0^21 = t_0, parametrizing r0 by its skew part."""
    n = t.n
    A = _cartan_matrix(n)
    t0 = [[c / 2 for c in row] for row in _t0_coeffs(n)]
    pairs = _skew_pairs(n)
    rows, rhs = [], []
    for a, b in t.gamma:
        alpha = A[a - 1]          # alpha_a(H_k) = A[a-1][k]
        beta = A[b - 1]
        for k in range(n - 1):
            # coefficient of H_k in (beta (x) 1) R + (1 (x) alpha) R
            row = []
            for (i, j) in pairs:
                # skew basis element S_ij = H_i(x)H_j - H_j(x)H_i
                v = 0
                if j == k:
                    v += beta[i]
                if i == k:
                    v -= beta[j]
                if i == k:
                    v += alpha[j]
                if j == k:
                    v -= alpha[i]
                row.append(Fraction(v))
            const = sum(t0[m][k] * beta[m] for m in range(n - 1)) + sum(t0[k][m] * alpha[m] for m in range(n - 1))
            rows.append(row)
            rhs.append(-const)
    particular, freedom = solve_affine(rows, rhs, ncols=len(pairs))
    return R0Space(n, tuple(particular), tuple(tuple(v) for v in freedom))


def r0_conditions_hold(t: BDTriple, r0: Mapping) -> bool:
    """Re-substitute r0 (a tensor in h (x) h) into both defining conditions."""
    n = t.n
    if tensor_add(r0, swap(r0)) != cartan_part(n):
        return False
    for a, b in t.gamma:
        # functional alpha_a on diag(d) is d_a - d_{a+1}
        val: dict = {}
        for (p, _, r, _), c in r0.items():
            fb = (p == b) - (p == b + 1)
            if fb:
                val[r] = val.get(r, 0) + c * fb
            fa = (r == a) - (r == a + 1)
            if fa:
                val[p] = val.get(p, 0) + c * fa
        if any(val.values()):
            return False
    return True


@dataclass(frozen=True)
class RMatrix:
    tensor: dict = field(hash=False)
    triple: BDTriple
    r0: dict = field(hash=False)

    def coefficients(self) -> list[tuple[int, int, int, int, Scalar]]:
        return [(*k, v) for k, v in sorted(self.tensor.items())]

    def r_plus(self, eta: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
        """R_+(eta) with <R_+(eta), zeta> = <r, eta (x) zeta>."""
        n = self.triple.n
        out = [[0] * n for _ in range(n)]
        for (p, q, r, s), c in self.tensor.items():
            out[r - 1][s - 1] += c * eta[q - 1][p - 1]
        return out

    def r_minus(self, zeta: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
        """R_-(zeta) with <R_-(zeta), eta> = -<r, eta (x) zeta>."""
        n = self.triple.n
        out = [[0] * n for _ in range(n)]
        for (p, q, r, s), c in self.tensor.items():
            out[p - 1][q - 1] -= c * zeta[s - 1][r - 1]
        return out


def bd_part(t: BDTriple) -> Tensor:
    """sum_{a>0} e_{-a} (x) e_a + sum_{a<b} e_{-a} ^ e_b."""
    out: dict = {}
    for root in positive_roots(t.n):
        a, b = root[0], root[1] + 1
        out[(b, a, a, b)] = Fraction(1)
    for alpha, beta in sorted(root_order(t)):
        a, b = alpha[0], alpha[1] + 1
        # iterate the root-vector map to reach beta with the correct sign
        sign = 1
        cur = alpha
        while cur != beta:
            pair, sg = gamma_root_vector(t, cur)
            sign *= sg
            cur = apply_gamma(t, cur)
        p, q = beta[0], beta[1] + 1
        out[(b, a, p, q)] = out.get((b, a, p, q), 0) + sign
        out[(p, q, b, a)] = out.get((p, q, b, a), 0) - sign
    return _clean(out)


def assemble_r(t: BDTriple, r0: Mapping | None = None) -> RMatrix:
    if r0 is None:
        r0 = solve_r0(t).member()
    tensor = tensor_add(r0, bd_part(t))
    if tensor_add(tensor, swap(tensor)) != casimir(t.n):
        raise RMatrixError("r + r^21 != t")
    if not cybe_check(tensor):
        raise RMatrixError("classical Yang-Baxter equation [[r, r]] = 0 fails")
    return RMatrix(tensor, t, dict(r0))


# -- the Sklyanin bracket ----------------------------------------------------------

def right_fields(f: MPoly, n: int = 5) -> dict[tuple[int, int], MPoly]:
    """(d_{E_ij} f)(X) = sum_q x_jq df/dx_iq  (right-invariant fields)."""
    partial = {(p, q): f.diff(x_index(p, q)) for p in range(1, n + 1) for q in range(1, n + 1)}
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = MPoly()
            for q in range(1, n + 1):
                d = partial[(i, q)]
                if d:
                    acc = acc + d * MPoly.x(j, q)
            out[(i, j)] = acc
    return out


def left_fields(f: MPoly, n: int = 5) -> dict[tuple[int, int], MPoly]:
    """(d'_{E_ij} f)(X) = sum_p x_pi df/dx_pj  (left-invariant fields)."""
    partial = {(p, q): f.diff(x_index(p, q)) for p in range(1, n + 1) for q in range(1, n + 1)}
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = MPoly()
            for p in range(1, n + 1):
                d = partial[(p, j)]
                if d:
                    acc = acc + d * MPoly.x(p, i)
            out[(i, j)] = acc
    return out


@dataclass(frozen=True)
class Bracket:
    """The Sklyanin bracket of an R-matrix with a global scale.

    ``{f, g} = scale * sum r_{ab} (d_a f d_b g - d'_a f d'_b g)``.
    """
    r: RMatrix
    scale: Fraction = Fraction(1)

    def _contract(self, lf: Mapping, lg: Mapping, rf: Mapping, rg: Mapping, zero):
        acc = zero
        for (p, q, r, s), c in self.r.tensor.items():
            a, b = rf[(p, q)], rg[(r, s)]
            a2, b2 = lf[(p, q)], lg[(r, s)]
            if a and b:
                acc = acc + (a * b) * c
            if a2 and b2:
                acc = acc - (a2 * b2) * c
        return acc * self.scale

    def symbolic(self, f: MPoly, g: MPoly) -> MPoly:
        n = self.r.triple.n
        return self._contract(left_fields(f, n), left_fields(g, n),
                              right_fields(f, n), right_fields(g, n), MPoly())

    def at_point(self, fdata, gdata) -> Fraction:
        """Bracket value from precomputed (right, left) field values."""
        (rf, lf), (rg, lg) = fdata, gdata
        acc = Fraction(0)
        for (p, q, r, s), c in self.r.tensor.items():
            acc += c * (rf[p - 1][q - 1] * rg[r - 1][s - 1] - lf[p - 1][q - 1] * lg[r - 1][s - 1])
        return acc * self.scale


def sklyanin_bracket(r: RMatrix, f: MPoly, g: MPoly, scale: Scalar = 1) -> MPoly:
    return Bracket(r, Fraction(scale)).symbolic(f, g)


def fields_at(grad: Sequence[Sequence[Scalar]], point: Sequence[Sequence[Scalar]]):
    """Right and left field values G X^T and X^T G from a gradient G."""
    n = len(point)
    right = [[sum(grad[i][q] * point[j][q] for q in range(n)) for j in range(n)] for i in range(n)]
    left = [[sum(point[p][i] * grad[p][j] for p in range(n)) for j in range(n)] for i in range(n)]
    return right, left


def poly_gradient_at(f: MPoly, point: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    n = len(point)
    vals = [0] * 50
    for p in range(n):
        for q in range(n):
            vals[x_index(p + 1, q + 1)] = point[p][q]
    return [[f.diff(x_index(p + 1, q + 1)).evaluate(vals) for q in range(n)] for p in range(n)]


class PointSampler:
    """Random integer matrices with entries in [-bound, bound]."""

    def __init__(self, seed: int = 1, bound: int = 9, n: int = 5):
        self.rng = random.Random(seed)
        self.bound = bound
        self.n = n

    def matrix(self) -> list[list[int]]:
        b = self.bound
        return [[self.rng.randint(-b, b) for _ in range(self.n)] for _ in range(self.n)]

    def nonsingular(self) -> list[list[int]]:
        while True:
            m = self.matrix()
            if det_bareiss(m):
                return m


def bracket_coefficient(bracket: Bracket, f, g, sampler: PointSampler, points: int = 8,
                        max_tries: int = 200) -> Fraction:
    """omega = {f, g} / (f g), evaluated at ``points`` random points.

    ``f`` and ``g`` are objects with ``value_and_gradient(point)`` (minor
    functions) or plain MPoly.
    """
    values = []
    tries = 0
    while len(values) < points:
        tries += 1
        if tries > max_tries:
            raise SamplingError("every sampled point was degenerate")
        pt = sampler.matrix()
        fv, fgrad = _value_grad(f, pt)
        if not fv:
            continue
        gv, ggrad = _value_grad(g, pt)
        if not gv:
            continue
        b = bracket.at_point(fields_at(fgrad, pt), fields_at(ggrad, pt))
        w = b / (Fraction(fv) * gv)
        if values and w != values[0][0]:
            raise NotLogCanonicalError(f"ratio not constant: {values[0][0]} vs {w}",
                                       [(values[0][1], values[0][0]), (pt, w)])
        values.append((w, pt))
    return values[0][0]


def _value_grad(f, pt):
    if isinstance(f, MPoly):
        vals = [0] * 50
        for p in range(len(pt)):
            for q in range(len(pt)):
                vals[x_index(p + 1, q + 1)] = pt[p][q]
        return f.evaluate(vals), poly_gradient_at(f, pt)
    return f.value_and_gradient(pt)


CalibrationFn = Callable[[Sequence[Fraction]], Fraction]
