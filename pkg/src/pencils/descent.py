"""Points and divisors to algebra elements, pencils and integral orbits.

Two conventions for the x - T image of a point (x0, 1, z0) coexist:
``x_minus_T`` returns x0 - theta, while the integral one-point orbit uses
alpha = theta for the point (0, 1, c).  They agree up to sign, hence up
to squares times Q^x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt

from .exactnum import (
    Poly,
    interpolate,
    is_squarefree,
    poly_gcd,
    poly_resultant,
)
from .forms import (
    BinaryForm,
    DegenerateFormError,
    Pencil,
    binary_discriminant,
    real_root_count,
)
from .order import AlgElement, EtaleAlgebra, FractionalIdeal, OrbitTriple


class DescentError(ValueError):
    pass


class MumfordError(ValueError):
    """A violated Mumford clause; ``code`` names which."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class CurvePoint:
    x0: Fraction
    y0: Fraction
    z0: Fraction

    def __init__(self, x0, y0, z0):
        object.__setattr__(self, "x0", Fraction(x0))
        object.__setattr__(self, "y0", Fraction(y0))
        object.__setattr__(self, "z0", Fraction(z0))
        if self.x0 == 0 and self.y0 == 0:
            raise ValueError("(x0, y0) must not be (0, 0)")

    def on_curve(self, f: BinaryForm) -> bool:
        return self.z0 ** 2 == f(self.x0, self.y0)

    def affine(self, n: int) -> CurvePoint:
        """Rescale to y0 = 1 (z has weight n/2)."""
        if self.y0 == 0:
            raise DescentError("point at infinity has no affine model")
        y = self.y0
        return CurvePoint(self.x0 / y, 1, self.z0 / y ** (n // 2))


@dataclass(frozen=True)
class MumfordDivisor:
    P: Poly
    R: Poly
    weierstrass: bool = False
    integral: bool = True

    @property
    def m(self) -> int:
        return self.P.degree

    def h(self, f: BinaryForm) -> Poly:
        """(R^2 - f(x, 1)) / P."""
        return (self.R * self.R - f.dehomogenize()).exact_div(self.P)


def _require_generic(f: BinaryForm):
    if f.f0 == 0:
        raise DegenerateFormError("f_0 = 0")
    if binary_discriminant(f) == 0:
        raise DegenerateFormError("Delta(f) = 0")


def validate_mumford(f: BinaryForm, P, R) -> MumfordDivisor:
    """Check the clauses one at a time and return the normalized divisor."""
    P = P if isinstance(P, Poly) else Poly(P)
    R = R if isinstance(R, Poly) else Poly(R)
    if P.degree < 1 or P.lc != 1:
        raise MumfordError("not-monic", "P must be monic of positive degree")
    if P.degree % 2 == 0:
        raise MumfordError("even-degree", "P must have odd degree")
    if not is_squarefree(P):
        raise MumfordError("not-squarefree", "P must be squarefree")
    if R.degree >= P.degree:
        raise MumfordError("R-degree", "deg R must be < deg P")
    if not ((R * R - f.dehomogenize()) % P).is_zero():
        raise MumfordError("not-divisible", "P does not divide R^2 - f(x, 1)")
    g = f.dehomogenize()
    weier = poly_gcd(P, g).degree > 0
    if weier and P.degree > 1:
        raise MumfordError("weierstrass", "composite Weierstrass divisors are not supported")
    return MumfordDivisor(P, R, weier, P.is_integral() and R.is_integral())


def mumford_from_points(f: BinaryForm, points) -> MumfordDivisor:
    """(P, R) through affine points (a_i, c_i) with distinct a_i."""
    pts = [(Fraction(a), Fraction(c)) for a, c in points]
    P = Poly.from_roots([a for a, _ in pts])
    R = interpolate(pts)
    return validate_mumford(f, P, R)


def _weierstrass_h(f: BinaryForm, x0):
    """h0 = t - x0 and h1 = f(t, 1)/(t - x0) for a root x0 of f(t, 1)."""
    fx = f.dehomogenize()
    h0 = Poly([-Fraction(x0), 1])
    h1 = fx.exact_div(h0)
    return h0, h1


def x_minus_T(L: EtaleAlgebra, D) -> AlgElement:
    """The image of a point or Mumford divisor in L^x (defined up to squares)."""
    f = L.f
    if isinstance(D, CurvePoint):
        if not D.on_curve(f):
            raise DescentError("point is not on the curve")
        if D.y0 == 0:
            return L.one  # z0^2 = f_0 so f_0 is already a square
        Q = D.affine(L.n)
        if Q.z0 != 0:
            return L.scalar(Q.x0) - L.theta
        h0, h1 = _weierstrass_h(f, Q.x0)
        return L.from_poly(h1) - L.from_poly(h0)
    if isinstance(D, MumfordDivisor):
        if D.weierstrass:
            if D.m != 1:
                raise MumfordError("weierstrass", "composite Weierstrass divisors are not supported")
            x0 = -D.P[0]
            h0, h1 = _weierstrass_h(f, x0)
            return L.from_poly(h1) - L.from_poly(h0)
        if poly_gcd(D.P, L.g).degree > 0:
            raise MumfordError("weierstrass", "P shares a factor with g")
        return L.from_poly(D.P)
    raise TypeError("expected a CurvePoint or MumfordDivisor")


# the pencil on L + K^2 and its isotropic plane

Vec = tuple  # (AlgElement, a, b)


def _top(x: AlgElement):
    return x.coords[-1]


def regular_pencil_forms(L: EtaleAlgebra, alpha: AlgElement):
    """Bilinear forms A', B' on L + K^2 as Python callables."""
    beta = L.theta

    def A(u: Vec, v: Vec):
        return _top(alpha * u[0] * v[0]) + u[1] * v[1]

    def B(u: Vec, v: Vec):
        return _top(alpha * beta * u[0] * v[0]) + u[1] * v[2] + v[1] * u[2]

    return A, B


def regular_pencil_matrix(L: EtaleAlgebra, alpha: AlgElement) -> Pencil:
    """(A', B') in the basis 1, beta, ..., beta^(n-1), e1, e2."""
    n = L.n
    A, B = regular_pencil_forms(L, alpha)
    zero = Fraction(0)
    basis = [(L.element([0] * i + [1]), zero, zero) for i in range(n)]
    basis += [(L.scalar(0), Fraction(1), zero), (L.scalar(0), zero, Fraction(1))]
    MA = [[A(u, v) for v in basis] for u in basis]
    MB = [[B(u, v) for v in basis] for u in basis]
    return Pencil(MA, MB)


@dataclass
class IsotropicPlane:
    vectors: list
    pencil: Pencil
    alpha: AlgElement
    gram_A: list = field(default_factory=list)
    gram_B: list = field(default_factory=list)

    def is_isotropic(self) -> bool:
        return all(v == 0 for r in self.gram_A + self.gram_B for v in r)


def plane_grams(L: EtaleAlgebra, alpha: AlgElement, vectors):
    A, B = regular_pencil_forms(L, alpha)
    GA = [[A(u, v) for v in vectors] for u in vectors]
    GB = [[B(u, v) for v in vectors] for u in vectors]
    return GA, GB


def soluble_plane_from_point(L: EtaleAlgebra, Q: CurvePoint, verify: bool = True,
                             literal: bool = False) -> IsotropicPlane:
    """The (g+1)-plane in L + K^2 isotropic for both forms, for a point Q.

    The listed spanning set (powers of beta, or of beta - x0 after the h_1
    vector, then a last vector with e-coordinates (1, b)) is isotropic for
    A' but pairs to a nonzero e under B' between the last two vectors.
    Giving the second-to-last vector the e-coordinates (0, -e) removes it
    without touching A' or any other entry.  ``literal`` skips that fix.
    """
    f = L.f
    n = L.n
    if n % 2:
        raise DescentError("needs n even")
    if not Q.on_curve(f):
        raise DescentError("point is not on the curve")
    Q = Q.affine(n)
    g = (n - 2) // 2
    alpha = x_minus_T(L, Q)
    beta = L.theta
    r = Fraction(f.coeffs[1]) / L.f0
    zero = Fraction(0)
    if Q.z0 != 0:
        vecs = [(beta ** i, zero, zero) for i in range(g)]
        vecs.append((beta ** g, Fraction(1), -(Q.x0 + r) / 2))
    else:
        _, h1 = _weierstrass_h(f, Q.x0)
        shift = beta - Q.x0
        vecs = [(L.from_poly(h1) - h1(Q.x0), zero, zero)]
        vecs += [(shift ** i, zero, zero) for i in range(1, g)]
        vecs.append((shift ** g, Fraction(1), -((2 * g + 1) * Q.x0 + r) / 2))
    if not literal and g >= 1:
        _, B = regular_pencil_forms(L, alpha)
        e = B(vecs[g - 1], vecs[g])
        lam, a, _ = vecs[g - 1]
        vecs[g - 1] = (lam, a, -e)
    GA, GB = plane_grams(L, alpha, vecs)
    plane = IsotropicPlane(vecs, regular_pencil_matrix(L, alpha), alpha, GA, GB)
    if verify and not plane.is_isotropic():
        raise ArithmeticError("constructed plane is not isotropic")
    return plane


# integral orbits

@dataclass
class TriplePair:
    """The two sign choices (s, -s); together one SL_n/mu_2 datum."""

    plus: OrbitTriple
    minus: OrbitTriple

    def __iter__(self):
        return iter((self.plus, self.minus))


def one_point_integral_orbit(f: BinaryForm, c=None) -> TriplePair:
    """Orbit triple of the integral point (0, 1, c), c^2 = f_n."""
    if not f.is_integral():
        raise DescentError("f must be integral")
    _require_generic(f)
    n = f.n
    if n < 4 or n % 2:
        raise DescentError("needs n even and >= 4")
    fn = int(f.coeffs[-1])
    if c is None:
        if fn < 0 or isqrt(fn) ** 2 != fn:
            raise DescentError("f_n is not a perfect square")
        c = isqrt(fn)
    if c * c != fn:
        raise DescentError("c^2 != f_n")
    if c == 0:
        raise DescentError("c = 0 is a Weierstrass point; use x_minus_T")
    L = EtaleAlgebra(f)
    gens = [L.scalar(c)] + [L.theta ** j for j in range(1, (n - 2) // 2 + 1)]
    gens += [L.zeta(k) for k in range(n // 2, n)]
    I = FractionalIdeal.from_elements(L, gens)
    s = Fraction(c) / L.f0 ** ((n - 2) // 2)
    t = OrbitTriple(I, L.theta, s)
    return TriplePair(t, t.negate())


def integral_orbit_from_divisor(f: BinaryForm, D: MumfordDivisor) -> TriplePair:
    """Triple (I_D, P(theta), s) with I_D = <R(theta), P(theta) I_f((n-3-m)/2)>."""
    if not f.is_integral():
        raise DescentError("f must be integral")
    _require_generic(f)
    n, m = f.n, D.m
    if m % 2 == 0:
        raise MumfordError("even-degree", "P must have odd degree")
    if not D.R.is_integral() or not D.P.is_integral():
        raise MumfordError("non-integral", "P and R must be integral")
    if D.weierstrass:
        raise MumfordError("weierstrass", "Weierstrass divisors use x_minus_T")
    if n < 4 or m > n - 3:
        raise DescentError("needs 1 <= m <= n-3")
    L = EtaleAlgebra(f)
    k = (n - 3 - m) // 2
    Rt = L.from_poly(D.R)
    Pt = L.from_poly(D.P)
    gens = [Rt * b for b in L.order_basis()] + [Pt * b for b in L.ideal_basis(k)]
    I = FractionalIdeal.from_elements(L, gens)
    s = Fraction(poly_resultant(D.P, D.R)) / L.f0 ** ((n - 3 + m) // 2)
    t = OrbitTriple(I, Pt, s)
    return TriplePair(t, t.negate())


def h_expansion(L: EtaleAlgebra, a) -> tuple[AlgElement, AlgElement]:
    """h(theta) for h = (f(x,1) - f(a,1))/(x - a), and the zeta expansion
    zeta_(n-1) + a zeta_(n-2) + ... + a^(n-2) zeta_1 + h(0)."""
    a = Fraction(a)
    fx = L.f.dehomogenize()
    h = (fx - fx(a)).exact_div(Poly([-a, 1]))
    n = L.n
    rhs = L.scalar(h(0))
    for j in range(1, n):
        rhs = rhs + L.zeta(j).scale(a ** (n - 1 - j))
    return L.from_poly(h), rhs


@dataclass
class ScalingBridge:
    f: BinaryForm
    f_tilde: BinaryForm

    def __call__(self, P: Pencil) -> Pencil:
        """(A, B) -> (16 A, B), taking invariant f_tilde to f."""
        return Pencil([[16 * v for v in r] for r in P.A], P.B, P.p)


def scaling_bridge(f: BinaryForm) -> ScalingBridge:
    n = f.n
    out = []
    for i, c in enumerate(f.coeffs):
        c = Fraction(c)
        d = 16 ** (n - i)
        if c.denominator != 1 or c.numerator % d:
            raise ValueError(f"f_{i} is not divisible by 16^{n - i}")
        out.append(c.numerator // d)
    return ScalingBridge(f, BinaryForm(out))


# norm condition

def rational_sqrt(r: Fraction) -> Fraction | None:
    r = Fraction(r)
    if r < 0:
        return None
    a, b = isqrt(r.numerator), isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


@dataclass
class NormCheck:
    status: str  # "witness", "not-square", "none-within-bound", "refused"
    alpha: AlgElement | None = None
    norm: Fraction | None = None
    root: Fraction | None = None
    message: str = ""


def norm_condition_check(L: EtaleAlgebra, alpha: AlgElement | None = None,
                         bound: int | None = None) -> NormCheck:
    """Is f_0 in Q^x2 N(L^x)?  Check a given alpha or scan a height box.

    A witness is alpha with N(alpha)/f_0 a rational square.  The box scan
    covers a_0 + a_1 theta + ... + a_(n-1) theta^(n-1) with |a_i| <= bound.
    Running out of box is not a proof of absence.
    """
    f0 = L.f0
    if alpha is not None:
        N = alpha.norm()
        root = rational_sqrt(N / f0) if N else None
        if root is None:
            return NormCheck("not-square", alpha, N, None, "N(alpha)/f_0 is not a square")
        return NormCheck("witness", alpha, N, root)
    if bound is None:
        raise ValueError("give alpha or a search bound")
    if f0 < 0 and real_root_count(L.f) == 0:
        return NormCheck("refused", message="f is negative definite: norms are positive over R")
    rng = range(-bound, bound + 1)
    for coeffs in sorted(product(rng, repeat=L.n), key=lambda v: (max(map(abs, v)), v)):
        if not any(coeffs):
            continue
        a = L.element(coeffs)
        N = a.norm()
        if N == 0:
            continue
        root = rational_sqrt(N / f0)
        if root is not None:
            return NormCheck("witness", a, N, root)
    return NormCheck("none-within-bound", message=f"no witness with |a_i| <= {bound}")
