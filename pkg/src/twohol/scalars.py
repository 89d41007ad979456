"""Exact scalars: rationals extended by roots of unity.

Gerbe phases are stored as rotation numbers p/q in [0, 1), standing for
exp(2 pi i p/q).  Sums of such phases with rational coefficients live in a
cyclotomic field Q(zeta_n).  :class:`Cyclotomic` keeps them in the canonical
power basis of Q(zeta_n) (reduced modulo the n-th cyclotomic polynomial) so
that equality is decidable.  Plain :class:`fractions.Fraction` values are used
whenever no phase is around.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, cos, sin, pi


def rotation(p, q=None):
    """Reduce a rotation number into [0, 1)."""
    r = Fraction(p) if q is None else Fraction(p, q)
    return r - (r.numerator // r.denominator)


def _poly_divmod(num, den):
    num = list(num)
    out = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead if isinstance(lead, Fraction) else Fraction(num[i + len(den) - 1], lead)
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return out, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
            assert all(r == 0 for r in rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(int(c) for c in poly)


def _solve(cols, rhs):
    """Solve sum_k x_k cols[k] = rhs exactly; None if inconsistent."""
    m, k = len(rhs), len(cols)
    rows = [[cols[j][i] for j in range(k)] + [rhs[i]] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] for i in range(r, m)):
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][k]
    return x


def _lcm(a, b):
    return a * b // gcd(a, b)


class Cyclotomic:
    """Element of Q(zeta_n), stored in the power basis 1, z, ..., z^(phi(n)-1)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs):
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def from_terms(cls, terms):
        """Build from an iterable of (rotation number, rational coefficient)."""
        terms = [(rotation(r), Fraction(c)) for r, c in terms if c]
        n = 1
        for r, _ in terms:
            n = _lcm(n, r.denominator)
        raw = [Fraction(0)] * n
        for r, c in terms:
            raw[(r.numerator * (n // r.denominator)) % n] += c
        return cls._reduce(n, raw)

    @classmethod
    def phase(cls, r):
        return cls.from_terms([(r, 1)])

    @classmethod
    def _reduce(cls, n, raw):
        mod = [Fraction(c) for c in cyclotomic_poly(n)]
        _, rem = _poly_divmod(raw, mod) if len(raw) >= len(mod) else (None, list(raw))
        rem = list(rem) + [Fraction(0)] * (len(mod) - 1 - len(rem))
        return cls(n, tuple(rem[: len(mod) - 1]))._shrink()

    def _shrink(self):
        # express in the smallest cyclotomic field that contains the value
        for d in sorted(k for k in range(1, self.n) if self.n % k == 0):
            cand = self._restrict(d)
            if cand is not None:
                return cand
        return self

    def _restrict(self, d):
        # write self in Q(zeta_d), zeta_d = zeta_n^(n/d), if possible
        step = self.n // d
        phi_d = len(cyclotomic_poly(d)) - 1
        cols = []
        for k in range(phi_d):
            vec = [Fraction(0)] * self.n
            vec[(k * step) % self.n] = Fraction(1)
            cols.append(list(Cyclotomic._reduce_no_shrink(self.n, vec).coeffs))
        x = _solve(cols, list(self.coeffs))
        if x is None:
            return None
        return Cyclotomic(d, tuple(x))

    @classmethod
    def _reduce_no_shrink(cls, n, raw):
        mod = [Fraction(c) for c in cyclotomic_poly(n)]
        _, rem = _poly_divmod(raw, mod) if len(raw) >= len(mod) else (None, list(raw))
        rem = list(rem) + [Fraction(0)] * (len(mod) - 1 - len(rem))
        return cls(n, tuple(rem[: len(mod) - 1]))

    def _lift(self, n):
        step = n // self.n
        raw = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            raw[(k * step) % n] += c
        return raw

    @staticmethod
    def coerce(x):
        if isinstance(x, Cyclotomic):
            return x
        return Cyclotomic(1, (Fraction(x),))

    def __add__(self, other):
        other = Cyclotomic.coerce(other)
        n = _lcm(self.n, other.n)
        a, b = self._lift(n), other._lift(n)
        return Cyclotomic._reduce(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-Cyclotomic.coerce(other))

    def __rsub__(self, other):
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other):
        other = Cyclotomic.coerce(other)
        n = _lcm(self.n, other.n)
        a, b = self._lift(n), other._lift(n)
        raw = [Fraction(0)] * n
        ia = [(i, c) for i, c in enumerate(a) if c]
        ib = [(j, c) for j, c in enumerate(b) if c]
        for i, x in ia:
            for j, y in ib:
                raw[(i + j) % n] += x * y
        return Cyclotomic._reduce(n, raw)

    __rmul__ = __mul__

    def conjugate(self):
        raw = [Fraction(0)] * self.n
        for k, c in enumerate(self.coeffs):
            raw[(-k) % self.n] += c
        return Cyclotomic._reduce(self.n, raw)

    def is_rational(self):
        return self.n in (1, 2) or not any(self.coeffs[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __complex__(self):
        return sum(complex(float(c)) * complex(cos(2 * pi * k / self.n), sin(2 * pi * k / self.n))
                   for k, c in enumerate(self.coeffs))

    def __eq__(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        d = self - other
        return not any(d.coeffs)

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_fraction())
        return hash((self.n, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        if self.is_rational():
            return "Cyclotomic(%s)" % self.to_fraction()
        return "Cyclotomic(n=%d, %s)" % (self.n, list(map(str, self.coeffs)))


def simplify(x):
    """Return a Fraction when the value is rational, else the Cyclotomic."""
    if isinstance(x, Cyclotomic) and x.is_rational():
        return x.to_fraction()
    return x


def conj(x):
    if isinstance(x, Cyclotomic):
        return x.conjugate()
    return x


def is_real(x):
    if isinstance(x, Cyclotomic):
        return x == x.conjugate()
    return True


def sign(x, digits=60):
    """Exact sign of a real scalar.

    Rationals are compared directly.  A real cyclotomic number that is not
    exactly zero is evaluated with mpmath at high precision; a nonzero
    algebraic number of this size is far from the rounding error.
    """
    if not isinstance(x, Cyclotomic) or x.is_rational():
        v = x.to_fraction() if isinstance(x, Cyclotomic) else Fraction(x)
        return (v > 0) - (v < 0)
    if not x:
        return 0
    import mpmath

    with mpmath.workdps(digits):
        total = mpmath.mpf(0)
        for k, c in enumerate(x.coeffs):
            if c:
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.cos(2 * mpmath.pi * k / x.n)
        if abs(total) < mpmath.mpf(10) ** (-(digits // 2)):
            raise ArithmeticError("sign undecided at working precision")
        return 1 if total > 0 else -1
