"""Binary forms, pencils of symmetric bilinear forms and the group action.

A binary n-ic form is stored as its coefficient list f_0, ..., f_n with
f(x, y) = f_0 x^n + f_1 x^(n-1) y + ... + f_n y^n.  A pencil is an ordered
pair (A, B) of symmetric n x n matrices over Q (entries Fraction/int) or
over F_p (entries ints mod p, ``p`` set).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exactnum import (
    Poly,
    det,
    interpolate,
    mat_mul,
    poly_discriminant,
    sturm_real_root_count,
    transpose,
)


class DegenerateFormError(ValueError):
    """Raised when a construction needs f_0 != 0 and Delta(f) != 0."""


def _scalar(v, p=None):
    if p is not None:
        return int(v) % p
    v = Fraction(v)
    return int(v) if v.denominator == 1 else v


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple
    p: int | None = None

    def __init__(self, coeffs: Sequence, p: int | None = None):
        if len(coeffs) < 1:
            raise ValueError("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(_scalar(c, p) for c in coeffs))
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def f0(self):
        return self.coeffs[0]

    def dehomogenize(self) -> Poly:
        """f(x, 1) as a polynomial in x (low degree first)."""
        return Poly(reversed(self.coeffs), self.p)

    def __call__(self, x, y=1):
        n = self.n
        out = sum(c * x ** (n - i) * y ** i for i, c in enumerate(self.coeffs))
        return out % self.p if self.p is not None else out

    def scale(self, c) -> BinaryForm:
        return BinaryForm([c * v for v in self.coeffs], self.p)

    def reduce_mod(self, p: int) -> BinaryForm:
        return BinaryForm([_int_mod(c, p) for c in self.coeffs], p)

    def is_integral(self) -> bool:
        return self.p is not None or all(Fraction(c).denominator == 1 for c in self.coeffs)

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


def _int_mod(c, p):
    c = Fraction(c)
    if c.denominator % p == 0:
        raise ValueError(f"{c} is not {p}-integral")
    return c.numerator * pow(c.denominator, -1, p) % p


def height(f: BinaryForm) -> int:
    """max |f_i| of an integral form."""
    if not f.is_integral():
        raise ValueError("height is defined for integral forms")
    return max(abs(int(c)) for c in f.coeffs)


def _with_nonzero_leading(f: BinaryForm):
    """Return (k, f') with f'(x, y) = f(x, y + k x) and f'_0 = f(1, k) != 0."""
    n = f.n
    ks = range(f.p) if f.p is not None else range(n + 1)
    for k in ks:
        if f(1, k) != 0:
            return k, gl2_transform(f, ((1, 0), (k, 1)))
    return None, None


def binary_discriminant(f: BinaryForm):
    """Discriminant of a binary form.

    For f_0 != 0 this is (-1)^(n(n-1)/2) Res(f(x,1), f'(x,1)) / f_0, the
    usual discriminant of f(x, 1).  For f_0 = 0 the form is first moved by
    the determinant-one substitution y -> y + k x, which leaves the
    discriminant unchanged.  Over F_p the integral value is reduced mod p.
    """
    n = f.n
    if all(c == 0 for c in f.coeffs):
        raise ValueError("discriminant of the zero form")
    if f.p is not None:
        lifted = binary_discriminant(BinaryForm(f.coeffs))
        return _int_mod(lifted, f.p)
    if n == 0:
        return Fraction(1)
    if f.f0 == 0:
        _, f = _with_nonzero_leading(f)
    return _scalar(poly_discriminant(f.dehomogenize()))


def gl2_transform(f: BinaryForm, gamma) -> BinaryForm:
    """The form (f o gamma)(x, y) = f(a x + b y, c x + d y), gamma = ((a, b), (c, d))."""
    (a, b), (c, d) = gamma
    p = f.p
    if p is None:
        dt = Fraction(a) * d - Fraction(b) * c
    else:
        dt = (a * d - b * c) % p
    if dt == 0:
        raise ValueError("singular substitution")
    n = f.n
    # work with polynomials in t = x/y: f(a t + b, c t + d)
    lin1 = Poly((b, a), p)
    lin2 = Poly((d, c), p)
    acc = Poly((), p)
    for i, coef in enumerate(f.coeffs):
        acc = acc + (lin1 ** (n - i) * lin2 ** i).scale(coef)
    return BinaryForm([acc[n - k] for k in range(n + 1)], p)


# pencils

def _mat(M, p):
    return tuple(tuple(_scalar(v, p) for v in row) for row in M)


@dataclass(frozen=True)
class Pencil:
    A: tuple
    B: tuple
    p: int | None = None

    def __init__(self, A, B, p: int | None = None, check: bool = True):
        A, B = _mat(A, p), _mat(B, p)
        n = len(A)
        if check:
            if len(B) != n or any(len(r) != n for r in A + B):
                raise ValueError("A and B must be square of the same size")
            for M in (A, B):
                if any(M[i][j] != M[j][i] for i in range(n) for j in range(i)):
                    raise ValueError("pencil matrices must be symmetric")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return len(self.A)

    def is_integral(self) -> bool:
        return self.p is not None or all(
            Fraction(v).denominator == 1 for M in (self.A, self.B) for r in M for v in r
        )


def invariant_form(P: Pencil) -> BinaryForm:
    """f(x, y) = (-1)^(n(n-1)/2) det(x A - y B).

    det(x A - B) is a polynomial of degree <= n in x whose coefficient of
    x^(n-i) is +-f_i; it is recovered by exact interpolation at x = 0..n.
    Over F_p the computation runs on integer lifts and is reduced at the end.
    """
    n = P.n
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    if n == 0:
        return BinaryForm([1], P.p)
    pts = []
    for x in range(n + 1):
        M = [[x * Fraction(P.A[i][j]) - Fraction(P.B[i][j]) for j in range(n)] for i in range(n)]
        pts.append((x, sign * det(M)))
    poly = interpolate(pts)
    coeffs = [poly[n - i] for i in range(n + 1)]
    if P.p is not None:
        return BinaryForm([_int_mod(c, P.p) for c in coeffs], P.p)
    return BinaryForm(coeffs)


def invariant_form_2x2(A, B, p: int):
    """Fast path for n = 2 over F_p: coefficients (f0, f1, f2) as ints."""
    a11, a12, a22 = A
    b11, b12, b22 = B
    # -det(xA - yB)
    f0 = -(a11 * a22 - a12 * a12)
    f1 = a11 * b22 + a22 * b11 - 2 * a12 * b12
    f2 = -(b11 * b22 - b12 * b12)
    return (f0 % p, f1 % p, f2 % p)


def regular_extension(P: Pencil) -> Pencil:
    """(A', B') on W + K^2: A' = A + <aa'>, B' = B + <ab' + a'b>.

    The result has invariant form f(x, y) y^2.
    """
    f = invariant_form(P)
    if f.f0 == 0 or binary_discriminant(f) == 0:
        raise DegenerateFormError("regular extension needs det A != 0 and Delta != 0")
    n = P.n
    zero = 0

    def block(M, corner):
        out = [list(r) + [zero, zero] for r in M]
        out.append([zero] * n + list(corner[0]))
        out.append([zero] * n + list(corner[1]))
        return out

    return Pencil(block(P.A, ((1, 0), (0, 0))), block(P.B, ((0, 1), (1, 0))), P.p)


@dataclass(frozen=True)
class ProjGroupElem:
    """A point (g, t) of SL_n/mu_2: det(g) t^(n/2) = 1, with (g, t) ~ (cg, c^-2 t)."""

    g: tuple
    t: object
    p: int | None = None

    def __init__(self, g, t, p: int | None = None, check: bool = True):
        g = _mat(g, p)
        t = _scalar(t, p)
        n = len(g)
        if check:
            if n % 2:
                raise ValueError("SL_n/mu_2 needs n even")
            val = det(g, p) * _pow(t, n // 2, p)
            if p is not None:
                val %= p
            if val != 1:
                raise ValueError("det(g) * t^(n/2) must equal 1")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "p", p)

    @classmethod
    def from_sl(cls, g, p=None) -> ProjGroupElem:
        return cls(g, 1, p)


def _pow(t, e, p):
    return pow(t, e, p) if p is not None else Fraction(t) ** e


def act(gt: ProjGroupElem, P: Pencil) -> Pencil:
    """(A, B) -> (t g A g^T, t g B g^T)."""
    if len(gt.g) != P.n or gt.p != P.p:
        raise ValueError("group element and pencil do not match")
    g, gT = [list(r) for r in gt.g], transpose(gt.g)
    p = P.p

    def tr(M):
        out = mat_mul(mat_mul(g, [list(r) for r in M], p), gT, p)
        return [[(gt.t * v) % p if p is not None else gt.t * v for v in r] for r in out]

    return Pencil(tr(P.A), tr(P.B), p, check=False)


def t_candidates(g, p: int) -> list[int]:
    """All t in F_p^x with det(g) t^(n/2) = 1 (both branches when they exist)."""
    n = len(g)
    d = det(g, p)
    return [t for t in range(1, p) if d * pow(t, n // 2, p) % p == 1]


# real structure

@dataclass(frozen=True)
class ComponentLabel:
    m: int
    n: int
    sign: int  # sign of f_0

    @property
    def tau_count(self) -> int:
        """Number of tau classes for this m (sign classes up to global negation)."""
        if self.m == 0:
            return 2 if self.n % 4 == 0 else 1
        return 2 ** (2 * self.m - 2)

    def tau_classes(self) -> list[tuple[int, ...]]:
        """Sign assignments to the 2m real linear factors with product sign(f_0),
        one representative (first sign +1) per class under global negation."""
        if self.m == 0:
            return [(1,), (-1,)] if self.n % 4 == 0 else [(1,)]
        out = []
        for rest in product((1, -1), repeat=2 * self.m - 1):
            signs = (1,) + rest
            prod_sign = 1
            for s in signs:
                prod_sign *= s
            if prod_sign == self.sign:
                out.append(signs)
        return out


def real_root_count(f: BinaryForm) -> int:
    """Distinct real roots of f in P^1(R)."""
    if f.p is not None:
        raise ValueError("real structure needs a form over Q")
    poly = f.dehomogenize()
    count = sturm_real_root_count(poly) if poly.degree >= 1 else 0
    if f.f0 == 0:
        count += 1  # the root at infinity (simple, since Delta != 0)
    return count


def real_component_label(f: BinaryForm) -> ComponentLabel:
    if binary_discriminant(f) == 0:
        raise DegenerateFormError("Delta(f) = 0")
    if f.f0 == 0:
        raise DegenerateFormError("f_0 = 0")
    r1 = real_root_count(f)
    return ComponentLabel(m=r1 // 2, n=f.n, sign=1 if f.f0 > 0 else -1)
