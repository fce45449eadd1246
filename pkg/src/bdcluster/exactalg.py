"""Exact arithmetic: sparse polynomials over Q in the 50 matrix-entry
symbols ``x_pq``, ``y_pq`` (p, q in 1..5), rational functions, and exact
linear algebra over ``fractions.Fraction``.

Monomials are packed into a single Python integer, one byte per variable,
``x11`` in the most significant byte.  Integer comparison of packed keys is
then lexicographic comparison of exponent vectors, so graded-lex order is
``(total_degree, key)``.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]

N_VARS = 50
_BITS = 8
_MAXEXP = (1 << _BITS) - 1
_HALF = 25 * _BITS
_LOW_MASK = (1 << _HALF) - 1

VAR_NAMES: tuple[str, ...] = tuple(
    f"{s}{p}{q}" for s in "xy" for p in range(1, 6) for q in range(1, 6)
)
_NAME_INDEX = {name: i for i, name in enumerate(VAR_NAMES)}


class SingularMatrixError(ArithmeticError):
    pass


class InconsistentSystemError(ArithmeticError):
    pass


def x_index(p: int, q: int) -> int:
    return 5 * (p - 1) + (q - 1)


def y_index(p: int, q: int) -> int:
    return 25 + 5 * (p - 1) + (q - 1)


def var_index(name: str) -> int:
    try:
        return _NAME_INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}") from None


def _shift(i: int) -> int:
    return (N_VARS - 1 - i) * _BITS


def _normalize(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def monomial_key(exponents: Mapping[int, int]) -> int:
    key = 0
    for i, e in exponents.items():
        if e < 0 or e > _MAXEXP:
            raise ValueError("exponent out of range")
        key += e << _shift(i)
    return key


def key_exponents(key: int) -> tuple[int, ...]:
    return tuple(key.to_bytes(N_VARS, "big"))


def key_degree(key: int) -> int:
    return sum(key.to_bytes(N_VARS, "big"))


class MPoly:
    """Sparse multivariate polynomial with rational coefficients.

    Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_deg")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        self._terms = {k: _normalize(c) for k, c in (terms or {}).items() if c}
        self._deg = None

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._deg = None
        return p

    # constructors
    @classmethod
    def constant(cls, c: Scalar) -> "MPoly":
        return cls._raw({0: _normalize(c)} if c else {})

    @classmethod
    def var(cls, i: int | str) -> "MPoly":
        if isinstance(i, str):
            i = var_index(i)
        return cls._raw({1 << _shift(i): 1})

    @classmethod
    def x(cls, p: int, q: int) -> "MPoly":
        return cls.var(x_index(p, q))

    @classmethod
    def y(cls, p: int, q: int) -> "MPoly":
        return cls.var(y_index(p, q))

    @classmethod
    def monomial(cls, exponents: Mapping[int, int], coeff: Scalar = 1) -> "MPoly":
        return cls._raw({monomial_key(exponents): _normalize(coeff)} if coeff else {})

    # inspection
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> Scalar:
        return self._terms.get(0, 0)

    def degree(self) -> int:
        if self._deg is None:
            self._deg = max((key_degree(k) for k in self._terms), default=-1)
        return self._deg

    def variables(self) -> set[int]:
        acc = 0
        for k in self._terms:
            acc |= k
        out = set()
        for i in range(N_VARS):
            if (acc >> _shift(i)) & _MAXEXP:
                out.add(i)
        return out

    def leading_term(self) -> tuple[int, Scalar]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._terms, key=lambda t: (key_degree(t), t))
        return k, self._terms[k]

    def sorted_terms(self) -> list[tuple[int, Scalar]]:
        return sorted(self._terms.items(), key=lambda t: (key_degree(t[0]), t[0]), reverse=True)

    # arithmetic
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "MPoly":
        if not c:
            return MPoly()
        return MPoly._raw({k: _normalize(v * c) for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return MPoly()
        if self.degree() + other.degree() > _MAXEXP:
            raise OverflowError("total degree exceeds packed-monomial capacity")
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MPoly._raw({k: _normalize(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / c)
        if isinstance(c, MPoly):
            return self.exact_div(c)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # calculus and substitution
    def diff(self, i: int | str) -> "MPoly":
        if isinstance(i, str):
            i = var_index(i)
        s = _shift(i)
        unit = 1 << s
        out = {}
        for k, c in self._terms.items():
            e = (k >> s) & _MAXEXP
            if e:
                out[k - unit] = c * e
        return MPoly._raw(out)

    def evaluate(self, values: Sequence[Scalar] | Mapping[int, Scalar]) -> Scalar:
        """Evaluate at a point given as a length-50 sequence or index map."""
        if isinstance(values, Mapping):
            vals = [values.get(i, 0) for i in range(N_VARS)]
        else:
            vals = list(values)
        total = 0
        for k, c in self._terms.items():
            t = c
            for i, e in enumerate(k.to_bytes(N_VARS, "big")):
                if e:
                    t = t * vals[i] ** e
                    if not t:
                        break
            total += t
        return _normalize(total) if isinstance(total, Fraction) else total

    def project_y_to_x(self) -> "MPoly":
        """Substitute y_pq := x_pq."""
        out: dict = {}
        for k, c in self._terms.items():
            nk = ((k >> _HALF) << _HALF) + ((k & _LOW_MASK) << _HALF)
            out[nk] = out.get(nk, 0) + c
        return MPoly._raw({k: c for k, c in out.items() if c})

    def substitute(self, mapping: Mapping[int, "MPoly | Scalar"]) -> "MPoly":
        """Substitute polynomials for variables (others left alone)."""
        cache: dict = {}
        result: dict = {}
        for k, c in self._terms.items():
            exps = k.to_bytes(N_VARS, "big")
            keep = 0
            factor = MPoly.constant(c)
            for i, e in enumerate(exps):
                if not e:
                    continue
                if i in mapping:
                    pk = (i, e)
                    if pk not in cache:
                        v = mapping[i]
                        cache[pk] = (v if isinstance(v, MPoly) else MPoly.constant(v)) ** e
                    factor = factor * cache[pk]
                else:
                    keep += e << _shift(i)
            for fk, fc in factor._terms.items():
                nk = fk + keep
                result[nk] = result.get(nk, 0) + fc
        return MPoly._raw({k: _normalize(c) for k, c in result.items() if c})

    def mul_monomial(self, key: int, coeff: Scalar = 1) -> "MPoly":
        return MPoly._raw({k + key: _normalize(c * coeff) for k, c in self._terms.items()})

    # division
    def divmod(self, divisor: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Multivariate division by a single polynomial in graded-lex order.

        With one divisor the remainder is zero iff the divisor divides self.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lk, lc = divisor.leading_term()
        lc = Fraction(lc)
        ldeg = key_degree(lk)
        lex = key_exponents(lk)
        dterms = [(k, c) for k, c in divisor._terms.items() if k != lk]
        work = dict(self._terms)
        heap = [(-key_degree(k), -k) for k in work]
        heapq.heapify(heap)
        quot: dict = {}
        rem: dict = {}
        while heap:
            nd, nk = heapq.heappop(heap)
            k = -nk
            c = work.pop(k, 0)
            if not c:
                continue
            if -nd >= ldeg and all(a >= b for a, b in zip(key_exponents(k), lex)):
                qk = k - lk
                qc = _normalize(c / lc)
                quot[qk] = qc
                for dk, dc in dterms:
                    tk = qk + dk
                    old = work.get(tk)
                    if old is None:
                        work[tk] = -qc * dc
                        heapq.heappush(heap, (-key_degree(tk), -tk))
                    else:
                        work[tk] = old - qc * dc
            else:
                rem[k] = c
        return (MPoly._raw({k: c for k, c in quot.items() if c}),
                MPoly._raw({k: _normalize(c) for k, c in rem.items() if c}))

    def divides(self, other: "MPoly") -> bool:
        return other.divmod(self)[1].is_zero()

    def exact_div(self, divisor: "MPoly") -> "MPoly":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    # rendering
    def to_str(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, (k, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            mon = _monomial_str(k)
            if mon and a == 1:
                body = mon
            elif mon:
                body = f"{a}*{mon}"
            else:
                body = str(a)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __str__ = to_str

    def __repr__(self) -> str:
        return f"MPoly({self.to_str()!r})"


def _monomial_str(key: int) -> str:
    out = []
    for i, e in enumerate(key.to_bytes(N_VARS, "big")):
        if e == 1:
            out.append(VAR_NAMES[i])
        elif e:
            out.append(f"{VAR_NAMES[i]}^{e}")
    return "*".join(out)


ZERO = MPoly()
ONE = MPoly.constant(1)


class RatFunc:
    """Quotient of two polynomials, denominator with positive leading coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly | Scalar, den: MPoly | Scalar = 1):
        num = num if isinstance(num, MPoly) else MPoly.constant(num)
        den = den if isinstance(den, MPoly) else MPoly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        elif den.is_constant():
            num, den = num.scale(Fraction(1) / Fraction(den.constant_term())), ONE
        else:
            q, r = num.divmod(den)
            if r.is_zero():
                num, den = q, ONE
            else:
                lc = Fraction(den.leading_term()[1])
                num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num = num
        self.den = den

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def evaluate(self, values) -> Fraction:
        return Fraction(self.num.evaluate(values)) / Fraction(self.den.evaluate(values))

    def __repr__(self) -> str:
        return f"RatFunc(({self.num.to_str()}) / ({self.den.to_str()}))"


# ---------------------------------------------------------------------------
# dense matrices as lists of rows

Matrix = list


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ValueError("ragged matrix")
    return rows, cols


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def to_fractions(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in m]


def det(m: Sequence[Sequence]):
    """Determinant.  Bareiss elimination for scalar entries, memoized
    cofactor expansion for polynomial entries."""
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if any(isinstance(v, MPoly) for row in m for v in row):
        return leading_principal_minors(m)[-1] if n else ONE
    return det_bareiss(m)


def _integer_rows(m: Sequence[Sequence[Scalar]]) -> tuple[list[list[int]], int]:
    """Scale rows to integers; returns the rows and the product of scalings."""
    from math import lcm

    out = []
    scale = 1
    for row in m:
        den = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        out.append([int(Fraction(v) * den) for v in row])
        scale *= den
    return out, scale


def det_bareiss(m: Sequence[Sequence[Scalar]]) -> Scalar:
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a, scale = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (akk * ai[j] - aik * rowk[j]) // prev
        prev = akk
    return _normalize(Fraction(sign * a[n - 1][n - 1], scale))


def leading_principal_minors(m: Sequence[Sequence], upto: int | None = None) -> list[MPoly]:
    """All leading principal minors det m[:r][:r], r = 1..upto, as MPoly.

    Laplace expansion along the last row, memoized on the column subset, so
    structurally zero entries are skipped and the minors share work.
    """
    n, c = shape(m)
    upto = min(n, c) if upto is None else upto
    rows = [[v if isinstance(v, MPoly) else MPoly.constant(v) for v in r] for r in m]
    memo: dict[int, MPoly] = {0: ONE}

    def minor(cols: int, k: int) -> MPoly:
        # rows 0..k-1, columns in bitmask `cols` (popcount k)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        row = rows[k - 1]
        acc: dict = {}
        pos = 0
        for j in range(c):
            bit = 1 << j
            if not cols & bit:
                continue
            entry = row[j]
            if entry:
                sub = minor(cols ^ bit, k - 1)
                if sub:
                    sgn = -1 if (k - 1 + pos) % 2 else 1
                    _accumulate(acc, sub, entry, sgn)
            pos += 1
        res = MPoly._raw({kk: _normalize(v) for kk, v in acc.items() if v})
        memo[cols] = res
        return res

    return [minor((1 << r) - 1, r) for r in range(1, upto + 1)]


def _accumulate(acc: dict, poly: MPoly, factor: MPoly, sign: int) -> None:
    get = acc.get
    for fk, fc in factor._terms.items():
        fc = fc * sign
        for k, v in poly._terms.items():
            kk = k + fk
            acc[kk] = get(kk, 0) + v * fc


def rref(m: Sequence[Sequence[Scalar]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = to_fractions(m)
    rows, cols = (len(a), len(a[0]) if a else 0)
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                ar = a[r]
                a[i] = [v - f * w for v, w in zip(a[i], ar)]
        pivots.append(col)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank by fraction-free elimination."""
    if not m or not m[0]:
        return 0
    a, _ = _integer_rows(m)
    rows, cols = len(a), len(a[0])
    rk = 0
    prev = 1
    for col in range(cols):
        piv = next((i for i in range(rk, rows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        p = a[rk][col]
        top = a[rk]
        for i in range(rk + 1, rows):
            f = a[i][col]
            a[i] = [(p * v - f * w) // prev for v, w in zip(a[i], top)]
        prev = p
        rk += 1
        if rk == rows:
            break
    return rk


def nullspace(m: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list[list[Fraction]]:
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, pivots = rref(m)
    cols = len(red[0])
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve_affine(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar],
                 ncols: int | None = None) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Particular solution (free variables set to zero) and nullspace basis."""
    if not a:
        n = ncols or 0
        return [Fraction(0)] * n, nullspace([], n)
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    cols = len(a[0])
    if cols in pivots:
        raise InconsistentSystemError("linear system has no solution")
    x = [Fraction(0)] * cols
    for row, p in zip(red, pivots):
        x[p] = row[cols]
    return x, nullspace(a)


def invert(m: Sequence[Sequence[Scalar]]) -> Matrix:
    n, c = shape(m)
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def det_and_inverse(m: Sequence[Sequence[Scalar]]) -> tuple[Fraction, Matrix]:
    """Determinant and inverse by one Gauss-Jordan pass."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    d = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            d = -d
        p = a[col][col]
        d *= p
        inv = 1 / p
        rc = [v * inv for v in a[col]]
        a[col] = rc
        for i in range(n):
            if i != col:
                f = a[i][col]
                if f:
                    a[i] = [v - f * w for v, w in zip(a[i], rc)]
    return d, [row[n:] for row in a]


def primitive_integer_multiple(values: Iterable[Scalar]) -> Fraction:
    """Smallest positive c with c*v integral for every v (1 if all zero)."""
    from math import gcd

    vals = [Fraction(v) for v in values if v]
    if not vals:
        return Fraction(1)
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    g = 0
    for v in vals:
        g = gcd(g, abs(v.numerator * (den // v.denominator)))
    return Fraction(den, g)


# -- bridge to FLINT for the large minors ----------------------------------------------

def flint_context(double: bool = False, rational: bool = False):
    """FLINT context in x11..x55 (and y11..y55 on the double)."""
    import flint

    names = VAR_NAMES if double else VAR_NAMES[:25]
    kind = flint.fmpq_mpoly_ctx if rational else flint.fmpz_mpoly_ctx
    return kind.get(names, "degrevlex")


def to_flint(p: MPoly, ctx=None):
    ctx = ctx or flint_context(double=any(i >= 25 for i in p.variables()))
    nv = ctx.nvars()
    data = {}
    for key, c in p._terms.items():
        exps = key_exponents(key)
        if any(exps[nv:]):
            raise ValueError("polynomial uses variables outside the context")
        if isinstance(c, Fraction):
            import flint

            c = flint.fmpq(c.numerator, c.denominator)
        data[exps[:nv]] = c
    return ctx.from_dict(data)


def from_flint(q) -> MPoly:
    terms = {}
    for exps, c in q.terms():
        key = monomial_key({i: int(e) for i, e in enumerate(exps) if e})
        terms[key] = _normalize(Fraction(int(c.p), int(c.q)) if hasattr(c, "q") else int(c))
    return MPoly._raw(terms)


def leading_minors_generic(m: Sequence[Sequence], one, upto: int | None = None) -> list:
    """Leading principal minors over any commutative ring whose zero is falsy.

    Same memoized Laplace expansion as :func:`leading_principal_minors`.
    """
    n = len(m)
    upto = n if upto is None else upto
    memo = {0: one}

    def minor(cols: int, k: int):
        hit = memo.get(cols)
        if hit is not None:
            return hit
        row = m[k - 1]
        acc = None
        pos = 0
        for j in range(n):
            bit = 1 << j
            if not cols & bit:
                continue
            entry = row[j]
            if entry:
                sub = minor(cols ^ bit, k - 1)
                if sub:
                    term = sub * entry
                    if (k - 1 + pos) % 2:
                        term = -term
                    acc = term if acc is None else acc + term
            pos += 1
        res = one * 0 if acc is None else acc
        memo[cols] = res
        return res

    return [minor((1 << r) - 1, r) for r in range(1, upto + 1)]
