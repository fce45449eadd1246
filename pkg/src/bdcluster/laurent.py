"""Laurent probes for a seed and its adjacent seeds, modulo a large prime.

The cluster map X -> (c_1, ..., c_25) of a seed over Mat_5 is birational, so
every entry x_ij is a rational function of the cluster.  It is a Laurent
polynomial exactly when its reduced denominator is a monomial.  We restrict
to a random line c(t) = c0 + t*B in cluster space, invert the cluster map
there as a power series by Newton iteration, recover x_ij(t) = P/Q by
rational reconstruction and check that Q is a product of the linear forms
c_j(t).  Adjacent seeds are reached through c_k = (M+ + M-)/c'_k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import flint

from .cluster import Seed

N = 5
PRIME = (1 << 61) - 1


class LaurentError(ArithmeticError):
    pass


@dataclass
class SeriesRing:
    p: int
    prec: int

    def const(self, c) -> flint.nmod_poly:
        return flint.nmod_poly([c % self.p], self.p)

    def line(self, a, b) -> flint.nmod_poly:
        return flint.nmod_poly([a % self.p, b % self.p], self.p)

    def mul(self, a, b):
        return a.mul_low(b, self.prec)

    def inv(self, a):
        return a.inverse_series_trunc(self.prec)

    def zero(self):
        return flint.nmod_poly([], self.p)


def _unit(s) -> bool:
    return int(s[0]) != 0


def _solve(ring: SeriesRing, a, rhs):
    """Solve a x = rhs over truncated power series (a invertible at t = 0)."""
    n = len(a)
    m = [list(row) + [r] for row, r in zip(a, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if _unit(m[r][col])), None)
        if piv is None:
            raise LaurentError("singular Jacobian at the base point")
        m[col], m[piv] = m[piv], m[col]
        inv = ring.inv(m[col][col])
        m[col] = [ring.mul(v, inv) for v in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [v - ring.mul(f, w) for v, w in zip(m[r], m[col])]
    return [row[n] for row in m]


def _det_and_inverse(ring: SeriesRing, a):
    """(det, inverse), or None when a is singular at t = 0."""
    n = len(a)
    m = [list(row) + [ring.const(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    det = ring.const(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if _unit(m[r][col])), None)
        if piv is None:
            return None
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = ring.mul(det, m[col][col])
        inv = ring.inv(m[col][col])
        m[col] = [ring.mul(v, inv) for v in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [v - ring.mul(f, w) for v, w in zip(m[r], m[col])]
    return det, [row[n:] for row in m]


def evaluate_cluster(ring: SeriesRing, variables: Sequence, x):
    """Values and Jacobian (w.r.t. the 25 entries) of the minor functions at X(t)."""
    need: dict = {}
    for v in variables:
        for term in v.terms:
            need.setdefault(term.grid, set()).add(term.size)
    cache = {}
    for grid, sizes in need.items():
        for r in sizes:
            block = [[ring.zero() if c is None else x[c[1] - 1][c[2] - 1] for c in row[:r]] for row in grid[:r]]
            grad = [ring.zero() for _ in range(N * N)]
            di = _det_and_inverse(ring, block)
            if di is None:
                # singular at a random base point: the minor vanishes identically
                cache[(grid, r)] = (ring.zero(), grad)
                continue
            d, inv = di
            for a in range(r):
                for b in range(r):
                    c = grid[a][b]
                    if c is not None:
                        grad[5 * (c[1] - 1) + c[2] - 1] += ring.mul(d, inv[b][a])
            cache[(grid, r)] = (d, grad)
    vals, jac = [], []
    for v in variables:
        val, grad = ring.zero(), [ring.zero() for _ in range(N * N)]
        for term in v.terms:
            d, g = cache[(term.grid, term.size)]
            val = val + d if term.sign > 0 else val - d
            grad = [u + w if term.sign > 0 else u - w for u, w in zip(grad, g)]
        vals.append(val)
        jac.append(grad)
    return vals, jac


def invert_cluster_map(ring: SeriesRing, variables: Sequence, x0, target, max_iter: int = 40):
    """X(t) with c(X(t)) = target(t) mod t^prec, starting from X(0) = x0."""
    x = [[ring.const(v) for v in row] for row in x0]
    for _ in range(max_iter):
        vals, jac = evaluate_cluster(ring, variables, x)
        res = [v - tv for v, tv in zip(vals, target)]
        if all(r.is_zero() for r in res):
            return x
        delta = _solve(ring, jac, res)
        x = [[x[i][j] - delta[5 * i + j] for j in range(N)] for i in range(N)]
    raise LaurentError("Newton iteration did not converge")


def rational_reconstruction(s, prec: int, p: int, check: int = 12):
    """(P, Q) with P/Q = s mod t^prec, deg P + deg Q < prec - check, or None."""
    bound = (prec - check) // 2
    t_n = flint.nmod_poly([0] * (prec - check) + [1], p)
    r0, r1 = t_n, s.truncate(prec - check)
    s0, s1 = flint.nmod_poly([], p), flint.nmod_poly([1], p)
    while r1.degree() >= bound:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    num, den = r1, s1
    if den.is_zero() or den.degree() > bound:
        return None
    g = num.gcd(den) if not num.is_zero() else den
    num, den = divmod(num, g)[0], divmod(den, g)[0]
    if int(den[0]) == 0:
        return None
    if not (den.mul_low(s, prec) - num).truncate(prec).is_zero():
        return None
    c = den[0]
    return num * (1 / c), den * (1 / c)


def split_denominator(q, lines):
    """Exponents e_j with q = prod lines_j^e_j up to a constant, or None."""
    exps = [0] * len(lines)
    for j, ell in enumerate(lines):
        if ell.degree() < 1:
            continue
        while q.degree() >= 1:
            quo, rem = divmod(q, ell)
            if not rem.is_zero():
                break
            q = quo
            exps[j] += 1
    return exps if q.degree() == 0 else None


@dataclass
class EntryResult:
    entry: str
    ok: bool
    denominator: dict         # variable name -> exponent
    degree: tuple             # (deg P, deg Q)


def probe_cluster(seed: Seed, adjacent: int | None = None, rng_seed: int = 1, p: int = PRIME,
                  start_prec: int = 64, max_prec: int = 1024) -> list[EntryResult]:
    """Denominators of the 25 entries in the seed's cluster, or in the cluster
    obtained by mutating in direction ``adjacent``."""
    variables = seed.variables
    if len(variables) != N * N:
        raise LaurentError("the probe expects a seed over Mat_5 (25 variables)")
    rng = random.Random(rng_seed)
    x0 = [[rng.randrange(1, p) for _ in range(N)] for _ in range(N)]
    unit = SeriesRing(p, 1)
    c0 = [int(v[0]) for v in evaluate_cluster(unit, variables, [[unit.const(v) for v in row] for row in x0])[0]]
    if any(v == 0 for v in c0):
        raise LaurentError("a cluster variable vanishes at the base point")
    b = [rng.randrange(1, p) for _ in variables]
    names = [v.name for v in variables]
    prec = start_prec
    while prec <= max_prec:
        ring = SeriesRing(p, prec)
        if adjacent is None:
            lines = [ring.line(c, bj) for c, bj in zip(c0, b)]
            target = lines
        else:
            k = adjacent
            plus, minus = seed.exchange_monomials(k)
            base = list(c0)
            base[k] = _monomial_value(c0, plus, p) + _monomial_value(c0, minus, p)
            base[k] = base[k] * pow(c0[k], -1, p) % p
            lines = [ring.line(c, bj) for c, bj in zip(base, b)]
            num = _monomial_series(ring, lines, plus) + _monomial_series(ring, lines, minus)
            target = list(lines)
            target[k] = ring.mul(num, ring.inv(lines[k]))
            names = list(names)
            names[k] = names[k] + "'"
        x = invert_cluster_map(ring, variables, x0, target)
        out = []
        for i in range(N):
            for j in range(N):
                rec = rational_reconstruction(x[i][j], prec, p)
                if rec is None:
                    break
                num, den = rec
                exps = split_denominator(den, lines)
                out.append(EntryResult(f"x{i + 1}{j + 1}", exps is not None,
                                       {} if exps is None else {n: e for n, e in zip(names, exps) if e},
                                       (num.degree(), den.degree())))
            else:
                continue
            break
        else:
            return out
        prec *= 2
    raise LaurentError(f"rational reconstruction needs precision beyond {max_prec}")


def _monomial_value(c, mono, p):
    acc = 1
    for j, e in mono.items():
        acc = acc * pow(c[j], e, p) % p
    return acc


def _monomial_series(ring, lines, mono):
    acc = ring.const(1)
    for j, e in mono.items():
        acc = ring.mul(acc, lines[j].pow_trunc(e, ring.prec))
    return acc


def laurent_probe(seed: Seed, rng_seed: int = 1, directions: Sequence[int] | None = None):
    """Every entry has a monomial denominator in the initial cluster and in
    each adjacent cluster."""
    from .verify import FAIL, PASS, CheckResult

    report = {}
    clusters = [None] + list(seed.mutable if directions is None else directions)
    for k in clusters:
        label = "initial" if k is None else f"mu_{seed.variables[k].name}"
        res = probe_cluster(seed, k, rng_seed=rng_seed)
        bad = [r.entry for r in res if not r.ok]
        if bad:
            return CheckResult("laurent", FAIL, f"{label}: {bad[0]} has a non-monomial denominator",
                               witness={"cluster": label, "entries": bad})
        report[label] = {r.entry: r.denominator for r in res if r.denominator}
    return CheckResult("laurent", PASS,
                       f"25 entries Laurent in the initial cluster and {len(clusters) - 1} adjacent clusters "
                       f"(mod {PRIME}, random line)", data={"denominators": report})
