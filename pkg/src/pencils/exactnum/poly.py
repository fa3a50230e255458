"""Dense univariate polynomials over Q and over prime fields F_p.

Coefficients are stored lowest degree first.  Over Q they are
``fractions.Fraction`` values; over F_p they are ints reduced into
``range(p)``.  The zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class DomainError(ValueError):
    """Two operands live over different coefficient domains."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p: int) -> int:
    if not isinstance(p, int) or p < 3 or not _is_prime(p):
        raise ValueError(f"{p!r} is not an odd prime")
    return p


class Poly:
    """Immutable dense polynomial.  ``p is None`` means the domain is Q."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Iterable = (), p: int | None = None):
        if p is None:
            cs = [Fraction(c) for c in coeffs]
            zero = Fraction(0)
        else:
            cs = [int(c) % p for c in coeffs]
            zero = 0
        while cs and cs[-1] == zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def x(cls, p: int | None = None) -> Poly:
        return cls((0, 1), p)

    @classmethod
    def const(cls, c, p: int | None = None) -> Poly:
        return cls((c,), p)

    @classmethod
    def from_roots(cls, roots: Iterable, p: int | None = None) -> Poly:
        out = cls((1,), p)
        for r in roots:
            out = out * cls((-r, 1), p)
        return out

    def _same(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.p != self.p:
                raise DomainError(f"domain mismatch: {self.p} vs {other.p}")
            return other
        return Poly((other,), self.p)

    def _new(self, coeffs) -> Poly:
        return Poly(coeffs, self.p)

    # basic properties
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self._zero()

    def _zero(self):
        return Fraction(0) if self.p is None else 0

    def _one(self):
        return Fraction(1) if self.p is None else 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero()

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.coeffs == other.coeffs
        if self.degree <= 0:
            try:
                return self == self._same(other)
            except (TypeError, ValueError):
                return NotImplemented
        return False

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __repr__(self):
        dom = "QQ" if self.p is None else f"GF({self.p})"
        return f"Poly({[str(c) for c in self.coeffs]}, {dom})"

    # ring operations
    def _inv(self, c):
        if self.p is None:
            return 1 / Fraction(c)
        if c % self.p == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return pow(c, -1, self.p)

    def __neg__(self):
        return self._new(-c for c in self.coeffs)

    def __add__(self, other):
        other = self._same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new(())
        out = [self._zero()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return self._new(out)

    __rmul__ = __mul__

    def scale(self, c) -> Poly:
        return self._new(c * v for v in self.coeffs)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out, base = self._new((1,)), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        other = self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = self._inv(other.lc)
        if len(rem) - 1 < db:
            return self._new(()), self
        quo = [self._zero()] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if self.p is not None:
                c %= self.p
            if c == 0:
                continue
            q = c * inv
            if self.p is not None:
                q %= self.p
            quo[k - db] = q
            for j, cb in enumerate(other.coeffs):
                rem[k - db + j] -= q * cb
        return self._new(quo), self._new(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(self._inv(self.lc))

    def derivative(self) -> Poly:
        return self._new(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = self._zero() if not isinstance(x, Poly) else x._new(())
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.p is not None and not isinstance(x, Poly):
            acc %= self.p
        return acc

    def compose(self, other: Poly) -> Poly:
        other = self._same(other)
        acc = self._new(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def powmod(self, e: int, mod: Poly) -> Poly:
        out, base = self._new((1,)) % mod, self % mod
        while e:
            if e & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            e >>= 1
        return out

    def reduce_mod(self, p: int) -> Poly:
        """Reduce a polynomial with integral coefficients modulo p."""
        if self.p is not None:
            raise DomainError("already over a prime field")
        out = []
        for c in self.coeffs:
            if c.denominator % p == 0:
                raise ValueError(f"coefficient {c} is not p-integral for p={p}")
            out.append(c.numerator * pow(c.denominator, -1, p))
        return Poly(out, p)

    def lift(self) -> Poly:
        """Integer lift of an F_p polynomial, coefficients in [0, p)."""
        return Poly(self.coeffs, None)

    def is_integral(self) -> bool:
        return self.p is not None or all(c.denominator == 1 for c in self.coeffs)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a field (zero if both are zero)."""
    b = a._same(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g monic."""
    b = a._same(b)
    r0, r1 = a, b
    s0, s1 = a._new((1,)), a._new(())
    t0, t1 = a._new(()), a._new((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0._inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_resultant(a: Poly, b: Poly):
    """Resultant Res(a, b) by the Euclidean recursion.

    Uses Res(A, B) = (-1)^(deg A deg B) lc(B)^(deg A - deg R) Res(B, R)
    with R = A mod B.
    """
    b = a._same(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if a.is_zero() or b.is_zero():
        return a._zero()
    acc = a._one()
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            out = acc * b.lc ** da
            return out % a.p if a.p is not None else out
        r = a % b
        if r.is_zero():
            return a._zero()
        if (da * db) % 2:
            acc = -acc
        acc = acc * b.lc ** (da - r.degree)
        if a.p is not None:
            acc %= a.p
        a, b = b, r


def poly_discriminant(f: Poly):
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f), d = deg f.

    Over F_p the value is computed on the integer lift and reduced, which
    keeps the formal degree of f' even when p divides deg f.
    """
    if f.is_zero():
        raise ValueError("discriminant of the zero polynomial")
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if f.p is not None:
        val = poly_discriminant(f.lift())
        return int(val.numerator * pow(val.denominator, -1, f.p)) % f.p
    if d == 1:
        return Fraction(1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    df = f.derivative()
    # d * lc(f) != 0 over Q, so the formal and actual degrees of f' agree
    return sign * poly_resultant(f, df) / f.lc


def is_squarefree(f: Poly) -> bool:
    if f.degree < 1:
        return True
    return poly_gcd(f, f.derivative()).degree == 0


def interpolate(points: Sequence[tuple]) -> Poly:
    """Lagrange interpolation through (x_i, y_i) over Q with distinct x_i."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    out = Poly(())
    for i, (xi, yi) in enumerate(points):
        basis = Poly((1,))
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly((-xj, 1))
                denom *= Fraction(xi) - xj
        out = out + basis.scale(Fraction(yi) / denom)
    return out


def rational_roots(f: Poly) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial over Q."""
    if f.p is not None:
        raise DomainError("rational_roots works over Q")
    if f.degree < 1:
        return []
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    # strip the power of x
    k = 0
    while ints[k] == 0:
        k += 1
    roots = [Fraction(0)] if k else []
    ints = ints[k:]
    a0, an = abs(ints[0]), abs(ints[-1])
    if len(ints) == 1:
        return roots
    cands = set()
    for num in _divisors(a0):
        for d in _divisors(an):
            cands.add(Fraction(num, d))
            cands.add(Fraction(-num, d))
    g = Poly(ints)
    roots.extend(r for r in sorted(cands) if g(r) == 0)
    return sorted(set(roots))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
