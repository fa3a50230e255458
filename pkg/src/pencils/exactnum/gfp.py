"""Prime field elements and polynomial factorization over F_p (p odd).

Factorization is the usual three-stage pipeline: squarefree
decomposition, distinct-degree splitting, then Cantor-Zassenhaus
equal-degree splitting driven by a seeded ``random.Random``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .poly import Poly, check_odd_prime, poly_gcd

DEFAULT_SEED = 20231016


@dataclass(frozen=True)
class PrimeFieldElem:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _v(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise ValueError("modulus mismatch")
            return other.value
        return int(other)

    def __add__(self, o):
        return PrimeFieldElem(self.value + self._v(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return PrimeFieldElem(self.value - self._v(o), self.p)

    def __rsub__(self, o):
        return PrimeFieldElem(self._v(o) - self.value, self.p)

    def __mul__(self, o):
        return PrimeFieldElem(self.value * self._v(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.p)

    def inverse(self) -> PrimeFieldElem:
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return PrimeFieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, o):
        return self * PrimeFieldElem(self._v(o), self.p).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeFieldElem(pow(self.value, e, self.p), self.p)

    def is_square(self) -> bool:
        return is_square_mod(self.value, self.p)

    def __int__(self):
        return self.value


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def is_square_mod(a: int, p: int) -> bool:
    """True for nonzero squares only."""
    return legendre(a, p) == 1


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Return [(s_i, i)] with f = lc * prod s_i^i, s_i monic squarefree coprime."""
    p = f.p
    if p is None:
        raise ValueError("squarefree_decomposition here is for F_p polynomials")
    f = f.monic()
    out: dict[int, Poly] = {}

    def merge(poly: Poly, mult: int):
        if poly.degree > 0:
            out[mult] = out[mult] * poly if mult in out else poly

    def rec(g: Poly, scale: int):
        if g.degree < 1:
            return
        dg = g.derivative()
        c = poly_gcd(g, dg)
        w = g.exact_div(c)
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            merge(w.exact_div(y), i * scale)
            w = y
            c = c.exact_div(y)
            i += 1
        if c.degree > 0:
            # c is a p-th power
            root = Poly([c[k] for k in range(0, c.degree + 1, p)], p)
            rec(root, scale * p)

    rec(f, 1)
    return sorted(((v, k) for k, v in out.items()), key=lambda t: t[1])


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree d."""
    p = f.p
    out = []
    x = Poly.x(p)
    h = x
    d = 0
    rest = f
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(p, rest)
        g = poly_gcd(rest, h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest.exact_div(g)
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a monic product of degree-d irreducibles."""
    p = f.p
    if f.degree == d:
        return [f]
    n = f.degree
    e = (p ** d - 1) // 2
    while True:
        a = Poly([rng.randrange(p) for _ in range(n)], p)
        if a.degree < 1:
            continue
        g = poly_gcd(f, a)
        if 0 < g.degree < n:
            break
        b = a.powmod(e, f) - 1
        g = poly_gcd(f, b)
        if 0 < g.degree < n:
            break
    return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor_prime_field(f: Poly, q: int | None = None, seed: int = DEFAULT_SEED):
    """Factor f over F_q into monic irreducibles with multiplicities.

    Returns ``(lc, [(factor, multiplicity), ...])`` sorted by degree then
    coefficients.  ``f`` may be given over Q with integral coefficients,
    in which case ``q`` names the prime to reduce by.
    """
    if f.p is None:
        if q is None:
            raise ValueError("a prime modulus is required")
        f = f.reduce_mod(check_odd_prime(q))
    else:
        check_odd_prime(f.p)
        if q is not None and q != f.p:
            raise ValueError("modulus mismatch")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    lc = f.lc
    factors = []
    for part, mult in squarefree_decomposition(f):
        for block, d in distinct_degree(part):
            for irr in equal_degree(block, d, rng):
                factors.append((irr, mult))
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return lc, factors


def factor_degrees(f: Poly, q: int | None = None) -> list[int]:
    """Degrees of the irreducible factors of a squarefree f over F_q."""
    _, facs = factor_prime_field(f, q)
    if any(m > 1 for _, m in facs):
        raise ValueError("polynomial is not squarefree mod q")
    return sorted(g.degree for g, _ in facs)


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over F_p."""
    p = f.p
    n = f.degree
    if n < 1:
        return False
    f = f.monic()
    x = Poly.x(p)
    if x.powmod(p ** n, f) != x % f:
        return False
    for r in _prime_divisors(n):
        h = x.powmod(p ** (n // r), f) - x
        if poly_gcd(f, h).degree != 0:
            return False
    return True


def roots_mod_p(f: Poly, seed: int = DEFAULT_SEED) -> list[int]:
    """Distinct roots of a nonzero f in F_p, sorted."""
    p = f.p
    if f.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    x = Poly.x(p)
    lin = poly_gcd(f.monic(), x.powmod(p, f.monic()) - x)
    if lin.degree < 1:
        return []
    factors = equal_degree(lin, 1, random.Random(seed))
    return sorted((-g[0]) % p for g in factors)


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
