"""Root data of sl_n and Belavin-Drinfeld triples.

Simple roots are the integers 1..n-1; a positive root a_i + ... + a_j is the
interval ``(i, j)``, which corresponds to the elementary matrix E_{i, j+1}.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import nullspace

Root = tuple  # (i, j) with i <= j: alpha_i + ... + alpha_j


class TripleError(ValueError):
    """A proposed triple violates one of the Belavin-Drinfeld axioms."""

    def __init__(self, axiom: str, message: str):
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom


@dataclass(frozen=True)
class BDTriple:
    n: int
    gamma1: frozenset
    gamma2: frozenset
    gamma: tuple  # sorted (source, target) pairs
    name: str = field(default="", compare=False)

    @property
    def gmap(self) -> dict[int, int]:
        return dict(self.gamma)

    @property
    def ginv(self) -> dict[int, int]:
        return {b: a for a, b in self.gamma}

    @property
    def rank(self) -> int:
        return self.n - 1

    @property
    def is_trivial(self) -> bool:
        return not self.gamma1

    def gamma_set(self, which: int) -> frozenset:
        return self.gamma1 if which == 1 else self.gamma2

    def to_text(self) -> str:
        g1 = ",".join(str(i) for i in sorted(self.gamma1))
        g2 = ",".join(str(i) for i in sorted(self.gamma2))
        mp = ",".join(f"{a}:{b}" for a, b in self.gamma)
        return f"g1={g1};g2={g2};map={mp}"

    def __str__(self) -> str:
        return self.name or self.to_text()


def validate_triple(n: int, gamma1, gamma2, gamma: dict[int, int], name: str = "") -> BDTriple:
    g1, g2 = frozenset(gamma1), frozenset(gamma2)
    simple = set(range(1, n))
    if not g1 <= simple or not g2 <= simple:
        raise TripleError("range", f"roots must lie in 1..{n - 1}")
    if len(g1) != len(g2):
        raise TripleError("size", "|Gamma1| != |Gamma2|")
    if set(gamma) != set(g1):
        raise TripleError("domain", "gamma must be defined exactly on Gamma1")
    if set(gamma.values()) != set(g2) or len(set(gamma.values())) != len(g1):
        raise TripleError("bijectivity", "gamma is not a bijection onto Gamma2")
    for a, b in itertools.combinations(sorted(g1), 2):
        if (abs(a - b) == 1) != (abs(gamma[a] - gamma[b]) == 1):
            raise TripleError("isometry", f"adjacency of {a},{b} not preserved")
    for a in g1:
        seen = set()
        cur = a
        while cur in g1:
            if cur in seen:
                raise TripleError("nilpotency", f"gamma-orbit of {a} never leaves Gamma1")
            seen.add(cur)
            cur = gamma[cur]
    return BDTriple(n, g1, g2, tuple(sorted(gamma.items())), name)


def parse_triple(text: str, n: int = 5) -> BDTriple:
    """Parse ``g1=1,2;g2=2,3;map=1:2,2:3`` (whitespace-insensitive)."""
    body = re.sub(r"\s+", "", text)
    fields = {}
    for part in filter(None, body.split(";")):
        key, _, val = part.partition("=")
        fields[key.lower()] = val
    unknown = set(fields) - {"g1", "g2", "map", "n"}
    if unknown:
        raise ValueError(f"unknown triple fields: {sorted(unknown)}")
    if "mod" in body:
        raise ValueError("modular shorthand is not accepted; give gamma as an explicit map")
    n = int(fields.get("n", n))
    ints = lambda s: [int(v) for v in s.split(",") if v]  # noqa: E731
    g1 = ints(fields.get("g1", ""))
    g2 = ints(fields.get("g2", ""))
    gamma = {}
    for pair in filter(None, fields.get("map", "").split(",")):
        a, _, b = pair.partition(":")
        gamma[int(a)] = int(b)
    return validate_triple(n, g1, g2, gamma)


def is_orientable(t: BDTriple) -> bool:
    g = t.gmap
    return not any(i + 1 in t.gamma1 and g[i + 1] + 1 == g[i] for i in t.gamma1)


def k_T(t: BDTriple) -> int:
    return t.rank - len(t.gamma1)


# -- the two identifications used to list triples up to isomorphism -----------

def transpose_triple(t: BDTriple) -> BDTriple:
    return validate_triple(t.n, t.gamma2, t.gamma1, t.ginv)


def flip_triple(t: BDTriple) -> BDTriple:
    w = lambda i: t.n - i  # noqa: E731
    return validate_triple(t.n, {w(i) for i in t.gamma1}, {w(i) for i in t.gamma2},
                           {w(a): w(b) for a, b in t.gamma})


def _encoding(t: BDTriple):
    return (len(t.gamma1), tuple(sorted(t.gamma1)), tuple(sorted(t.gamma2)), t.gamma)


def isomorphism_class(t: BDTriple) -> list[BDTriple]:
    orbit = {t}
    frontier = [t]
    while frontier:
        cur = frontier.pop()
        for nxt in (transpose_triple(cur), flip_triple(cur)):
            if nxt not in orbit:
                orbit.add(nxt)
                frontier.append(nxt)
    return sorted(orbit, key=_encoding)


def canonical(t: BDTriple) -> BDTriple:
    return isomorphism_class(t)[0]


def all_triples(n: int) -> list[BDTriple]:
    out = []
    simple = range(1, n)
    for size in range(n):
        for g1 in itertools.combinations(simple, size):
            for g2 in itertools.combinations(simple, size):
                for image in itertools.permutations(g2):
                    try:
                        out.append(validate_triple(n, g1, g2, dict(zip(g1, image))))
                    except TripleError:
                        pass
    return out


# The thirteen SL_5 classes in their customary numbering, with fixed
# representatives (case 10: 1->4, 3->1; case 13: 1->3, 2->4, 4->1).
_CASES = {
    1: ((), (), {}),
    2: ((1,), (2,), {1: 2}),
    3: ((1,), (3,), {1: 3}),
    4: ((1,), (4,), {1: 4}),
    5: ((2,), (3,), {2: 3}),
    6: ((1, 2), (2, 3), {1: 2, 2: 3}),
    7: ((1, 2), (3, 4), {1: 3, 2: 4}),
    8: ((1, 3), (2, 4), {1: 2, 3: 4}),
    9: ((1, 3), (2, 4), {1: 4, 3: 2}),
    10: ((1, 3), (1, 4), {1: 4, 3: 1}),
    11: ((1, 2), (3, 4), {1: 4, 2: 3}),
    12: ((1, 2, 3), (2, 3, 4), {1: 2, 2: 3, 3: 4}),
    13: ((1, 2, 4), (1, 3, 4), {1: 3, 2: 4, 4: 1}),
}


def standard_case(k: int) -> BDTriple:
    if k not in _CASES:
        raise ValueError(f"case must be in 1..13, got {k}")
    g1, g2, g = _CASES[k]
    return validate_triple(5, g1, g2, g, name=f"case{k}")


def case_number(t: BDTriple) -> int | None:
    """Case number of the isomorphism class of an SL_5 triple."""
    if t.n != 5:
        return None
    c = canonical(t)
    for k in _CASES:
        if canonical(standard_case(k)) == c:
            return k
    return None


def enumerate_triples(n: int = 5) -> list[BDTriple]:
    """One canonical representative per isomorphism class."""
    reps = sorted({canonical(t) for t in all_triples(n)}, key=_encoding)
    if n == 5:
        reps = [BDTriple(r.n, r.gamma1, r.gamma2, r.gamma, f"case{case_number(r)}") for r in reps]
    return reps


# -- positive roots, the order induced by gamma, and the torus h_T -------------

def positive_roots(n: int) -> list[Root]:
    return [(i, j) for i in range(1, n) for j in range(i, n)]


def root_matrix_index(root: Root) -> tuple[int, int]:
    """E_{a,b} (1-based) carrying the positive root ``root``."""
    i, j = root
    return i, j + 1


def apply_gamma(t: BDTriple, root: Root) -> Root | None:
    """Additive extension of gamma to roots supported inside Gamma1."""
    i, j = root
    if any(k not in t.gamma1 for k in range(i, j + 1)):
        return None
    g = t.gmap
    images = [g[k] for k in range(i, j + 1)]
    lo, hi = min(images), max(images)
    if hi - lo != j - i:
        return None
    return lo, hi


def root_order(t: BDTriple) -> set[tuple[Root, Root]]:
    """All pairs (a, b) of positive roots with b = gamma^k(a), k >= 1."""
    pairs = set()
    for root in positive_roots(t.n):
        cur = apply_gamma(t, root)
        while cur is not None:
            pairs.add((root, cur))
            cur = apply_gamma(t, cur)
    return pairs


def cartan_basis_diagonal(n: int) -> list[list[int]]:
    """Diagonals of H_i = E_ii - E_{i+1,i+1}."""
    return [[(1 if k == i else -1 if k == i + 1 else 0) for k in range(n)] for i in range(n - 1)]


def h_T_basis(t: BDTriple) -> list[list[Fraction]]:
    """Basis of h_T as coordinates over H_1..H_{n-1}.

    A root alpha_i evaluates on sum c_k H_k as sum_k c_k A_{ik} with A the
    Cartan matrix, so each gamma-pair gives one linear equation.
    """
    n = t.n
    cartan = [[2 if i == k else -1 if abs(i - k) == 1 else 0 for k in range(n - 1)] for i in range(n - 1)]
    rows = [[Fraction(cartan[a - 1][k] - cartan[b - 1][k]) for k in range(n - 1)] for a, b in t.gamma]
    return nullspace(rows, n - 1) if rows else [[Fraction(int(i == j)) for i in range(n - 1)] for j in range(n - 1)]


def h_T_diagonals(t: BDTriple) -> list[list[int]]:
    """Primitive integer diagonal vectors spanning h_T."""
    from math import gcd, lcm

    out = []
    for coords in h_T_basis(t):
        diag = [Fraction(0)] * t.n
        for k, c in enumerate(coords):
            diag[k] += c
            diag[k + 1] -= c
        den = lcm(*(d.denominator for d in diag))
        ints = [int(d * den) for d in diag]
        g = 0
        for v in ints:
            g = gcd(g, v)
        out.append([v // g for v in ints])
    return out
