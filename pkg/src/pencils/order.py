"""The ring R_f, the ideals I_f(k) and fractional-ideal arithmetic.

Elements of L = Q[x]/g(x) are coordinate vectors in the power basis
1, theta, ..., theta^(n-1).  Lattices are stored canonically as a single
positive denominator and the column HNF of the integral scaled basis, so
two lattices are equal exactly when those data agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exactnum import Poly, det, hnf_span, lattice_contains, mat_det_inv
from .forms import BinaryForm, DegenerateFormError, binary_discriminant


class EtaleAlgebra:
    """L = Q[x]/g(x) for f(x, 1) = f_0 g(x), g monic and squarefree."""

    def __init__(self, f: BinaryForm):
        if f.p is not None:
            raise ValueError("EtaleAlgebra is built over Q")
        if f.f0 == 0:
            raise DegenerateFormError("f_0 = 0")
        if binary_discriminant(f) == 0:
            raise DegenerateFormError("Delta(f) = 0")
        self.f = f
        self.n = f.n
        self.f0 = Fraction(f.f0)
        self.g = f.dehomogenize().monic()
        n = self.n
        # theta^k in power coordinates for k < 2n - 1
        pows = []
        cur = [Fraction(0)] * n
        cur[0] = Fraction(1)
        gc = self.g.coeffs
        for _ in range(2 * n - 1):
            pows.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                for i in range(n):
                    cur[i] -= top * gc[i]
        self._pows = pows
        self._cache: dict = {}

    def __repr__(self):
        return f"EtaleAlgebra(f={self.f})"

    def __eq__(self, other):
        return isinstance(other, EtaleAlgebra) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    # elements
    def element(self, coords: Sequence) -> AlgElement:
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.n:
            return self.from_poly(Poly(coords))
        coords += [Fraction(0)] * (self.n - len(coords))
        return AlgElement(self, tuple(coords))

    def from_poly(self, h: Poly) -> AlgElement:
        r = h % self.g
        return self.element(list(r.coeffs))

    def scalar(self, c) -> AlgElement:
        return self.element([c])

    @property
    def one(self) -> AlgElement:
        return self.scalar(1)

    @property
    def theta(self) -> AlgElement:
        return self.element([0, 1]) if self.n > 1 else self.scalar(-self.g[0])

    def mul_coords(self, a: Sequence, b: Sequence) -> tuple:
        n = self.n
        out = [Fraction(0)] * n
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for k, v in enumerate(self._pows[i + j]):
                    if v:
                        out[k] += c * v
        return tuple(out)

    def zeta(self, k: int) -> AlgElement:
        """zeta_k = f_0 theta^k + f_1 theta^(k-1) + ... + f_(k-1) theta."""
        if not 1 <= k <= self.n - 1:
            raise ValueError("zeta_k is defined for 1 <= k <= n-1")
        fc = self.f.coeffs
        coords = [Fraction(0)] * self.n
        for j in range(1, k + 1):
            coords[j] = Fraction(fc[k - j])
        return AlgElement(self, tuple(coords))

    def zeta_basis(self) -> list[AlgElement]:
        return [self.zeta(k) for k in range(1, self.n)]

    def order_basis(self) -> list[AlgElement]:
        """The Z-basis 1, zeta_1, ..., zeta_(n-1) of R_f."""
        return [self.one] + self.zeta_basis()

    def ideal_basis(self, k: int) -> list[AlgElement]:
        """Basis 1, theta, ..., theta^k, zeta_(k+1), ..., zeta_(n-1) of I_f(k)."""
        if not 0 <= k <= self.n - 1:
            raise ValueError(f"I_f(k) needs 0 <= k <= n-1, got k={k}")
        th = [self.element([0] * j + [1]) for j in range(k + 1)]
        return th + [self.zeta(j) for j in range(k + 1, self.n)]

    def ideal_If(self, k: int) -> FractionalIdeal:
        key = ("I", k)
        if key not in self._cache:
            self._cache[key] = FractionalIdeal.from_elements(self, self.ideal_basis(k))
        return self._cache[key]

    @property
    def order(self) -> FractionalIdeal:
        return self.ideal_If(0)

    def ideal_coords(self, x: AlgElement, k: int) -> list[Fraction]:
        """Coordinates of x in the basis of I_f(k); integral iff x in I_f(k)."""
        n, f0, fc = self.n, self.f0, self.f.coeffs
        v = list(x.coords)
        coeff = [Fraction(0)] * n
        # peel zeta_(n-1), ..., zeta_(k+1) off from the top power
        for j in range(n - 1, k, -1):
            c = v[j] / f0
            coeff[j] = c
            for i in range(1, j + 1):
                v[i] -= c * fc[j - i]
        for j in range(k + 1):
            coeff[j] = v[j]
        return coeff

    def build_order(self):
        """Basis of R_f and the table of zeta_i zeta_j in that basis."""
        basis = self.order_basis()
        table = {}
        for i in range(1, self.n):
            for j in range(i, self.n):
                prod = basis[i] * basis[j]
                coords = self.ideal_coords(prod, 0)
                if any(c.denominator != 1 for c in coords):
                    raise ArithmeticError(f"R_f not closed: zeta_{i} zeta_{j}")
                table[(i, j)] = tuple(int(c) for c in coords)
        return basis, table

    def trace_form(self, basis: Sequence[AlgElement], other: Sequence[AlgElement] | None = None):
        other = basis if other is None else other
        return [[(a * b).trace() for b in other] for a in basis]

    def order_discriminant(self) -> Fraction:
        return det(self.trace_form(self.order_basis()))

    def fprime_theta(self) -> AlgElement:
        """f'(theta) = f_0 g'(theta)."""
        return self.from_poly(self.g.derivative()).scale(self.f0)


@dataclass(frozen=True, eq=False)
class AlgElement:
    parent: EtaleAlgebra
    coords: tuple

    def _coerce(self, other) -> AlgElement:
        if isinstance(other, AlgElement):
            if other.parent is not self.parent and other.parent != self.parent:
                raise ValueError("elements of different algebras")
            return other
        return self.parent.scalar(other)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        other = self._coerce(other)
        return AlgElement(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.parent, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, AlgElement):
            return self.scale(other)
        other = self._coerce(other)
        return AlgElement(self.parent, self.parent.mul_coords(self.coords, other.coords))

    __rmul__ = __mul__

    def scale(self, c) -> AlgElement:
        c = Fraction(c)
        return AlgElement(self.parent, tuple(c * a for a in self.coords))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.parent.one, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        if not isinstance(other, AlgElement):
            return self.scale(1 / Fraction(other))
        return self * other.inverse()

    def mult_matrix(self):
        """Matrix of multiplication by self; column j is self * theta^j."""
        L = self.parent
        cols = [L.mul_coords(self.coords, L._pows[j]) for j in range(L.n)]
        return [[cols[j][i] for j in range(L.n)] for i in range(L.n)]

    def norm(self) -> Fraction:
        return det(self.mult_matrix())

    def trace(self) -> Fraction:
        M = self.mult_matrix()
        return sum(M[i][i] for i in range(len(M)))

    def inverse(self) -> AlgElement:
        d, Minv = mat_det_inv(self.mult_matrix())
        if Minv is None:
            raise ZeroDivisionError("element is not invertible")
        return AlgElement(self.parent, tuple(row[0] for row in Minv))

    def as_poly(self) -> Poly:
        return Poly(self.coords)

    def __repr__(self):
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coords) if c]
        return "AlgElement(" + (" + ".join(terms) or "0") + ")"


def element_norm(a: AlgElement) -> Fraction:
    return a.norm()


class FractionalIdeal:
    """A full-rank Z-lattice in L in canonical form.

    ``den`` is the least positive integer making the lattice integral in
    power coordinates and ``H`` is the column HNF of ``den`` times it.  The
    class is also used for lattices that are not R_f-modules;
    ``is_fractional_ideal`` tells them apart.
    """

    __slots__ = ("parent", "den", "H")

    def __init__(self, parent: EtaleAlgebra, den: int, H):
        self.parent = parent
        self.den = den
        self.H = tuple(tuple(r) for r in H)

    @classmethod
    def from_elements(cls, parent: EtaleAlgebra, gens: Sequence) -> FractionalIdeal:
        vecs = [g.coords if isinstance(g, AlgElement) else tuple(Fraction(c) for c in g) for g in gens]
        den = 1
        for v in vecs:
            for c in v:
                den = lcm(den, Fraction(c).denominator)
        ints = [[int(Fraction(c) * den) for c in v] for v in vecs]
        H = hnf_span(ints, parent.n)
        # the scaled lattice may have a common factor with den
        g = den
        for row in H:
            for v in row:
                g = gcd(g, v)
        if g > 1:
            den //= g
            H = [[v // g for v in row] for row in H]
        return cls(parent, den, H)

    def __eq__(self, other):
        return (isinstance(other, FractionalIdeal) and self.parent == other.parent
                and self.den == other.den and self.H == other.H)

    def __hash__(self):
        return hash((self.den, self.H))

    def __repr__(self):
        return f"FractionalIdeal(den={self.den}, H={[list(r) for r in self.H]})"

    def basis(self) -> list[AlgElement]:
        n = self.parent.n
        return [AlgElement(self.parent, tuple(Fraction(self.H[i][j], self.den) for i in range(n)))
                for j in range(n)]

    def basis_matrix(self):
        """Columns are basis vectors in power coordinates."""
        return [[Fraction(v, self.den) for v in row] for row in self.H]

    def contains_element(self, x: AlgElement) -> bool:
        return lattice_contains(self.H, [c * self.den for c in x.coords])

    def __le__(self, other: FractionalIdeal) -> bool:
        """Lattice containment self <= other."""
        if self.parent != other.parent:
            raise ValueError("ideals of different algebras")
        return all(other.contains_element(b) for b in self.basis())

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return FractionalIdeal.from_elements(self.parent, [b * other for b in self.basis()])
        if not isinstance(other, FractionalIdeal):
            other = self.parent.scalar(other)
            return self * other
        if self.parent != other.parent:
            raise ValueError("ideals of different algebras")
        prods = [a * b for a in self.basis() for b in other.basis()]
        return FractionalIdeal.from_elements(self.parent, prods)

    __rmul__ = __mul__

    def __add__(self, other: FractionalIdeal) -> FractionalIdeal:
        return FractionalIdeal.from_elements(self.parent, self.basis() + other.basis())

    def __pow__(self, e: int):
        if e < 1:
            raise ValueError("positive powers only")
        out = self
        for _ in range(e - 1):
            out = out * self
        return out

    def index_det(self) -> Fraction:
        """det of the canonical basis in power coordinates."""
        out = Fraction(1)
        for i in range(self.parent.n):
            out *= Fraction(self.H[i][i], self.den)
        return out

    def norm(self) -> Fraction:
        """|N(I)| relative to R_f: covolume ratio against 1, zeta_1, ..."""
        return abs(self.index_det() / self.parent.f0 ** (self.parent.n - 1))


def ideal_If(L: EtaleAlgebra, k: int) -> FractionalIdeal:
    return L.ideal_If(k)


def ideal_multiply(I: FractionalIdeal, J: FractionalIdeal) -> FractionalIdeal:
    return I * J


def ideal_norm_oriented(I: FractionalIdeal, basis: Sequence[AlgElement] | None = None) -> Fraction:
    """s = det(T) where the chosen basis equals (1, zeta_1, ...) T.

    Without ``basis`` the canonical HNF basis is used.  A supplied basis must
    be a Z-basis of I; the sign of s follows the ordering of the basis.
    """
    L = I.parent
    if basis is None:
        basis = I.basis()
    if len(basis) != L.n:
        raise ValueError("basis has the wrong length")
    M = [[b.coords[i] for b in basis] for i in range(L.n)]
    d = det(M)
    if d == 0:
        raise ValueError("basis is rank deficient")
    if basis is not None and FractionalIdeal.from_elements(L, basis) != I:
        raise ValueError("supplied vectors are not a basis of the ideal")
    return d / L.f0 ** (L.n - 1)


def is_fractional_ideal(I: FractionalIdeal) -> bool:
    """True iff zeta_k I is contained in I for every k."""
    L = I.parent
    basis = I.basis()
    for z in L.zeta_basis():
        for b in basis:
            if not I.contains_element(z * b):
                return False
    return True


def trace_dual_check(L: EtaleAlgebra, fprime: AlgElement | None = None) -> bool:
    """Whether (1/f'(theta)) I_f(n-2) is the trace dual of R_f.

    The Gram matrix Tr(r_i d_j) between the basis of R_f and the scaled
    basis of I_f(n-2) must be integral and unimodular.  ``fprime`` overrides
    f'(theta), which is how the negative control is run.
    """
    if L.n < 2:
        raise ValueError("needs n >= 2")
    fp = L.fprime_theta() if fprime is None else fprime
    inv = fp.inverse()
    dual = [b * inv for b in L.ideal_basis(L.n - 2)]
    G = L.trace_form(L.order_basis(), dual)
    if any(Fraction(v).denominator != 1 for r in G for v in r):
        return False
    return abs(det(G)) == 1


@dataclass(frozen=True)
class OrbitTriple:
    """(I, alpha, s) with I^2 in alpha I_f(n-3), N(I) = s Z, N(alpha) = s^2 f_0^(n-3)."""

    I: FractionalIdeal
    alpha: AlgElement
    s: Fraction

    @property
    def parent(self) -> EtaleAlgebra:
        return self.I.parent

    def negate(self) -> OrbitTriple:
        return OrbitTriple(self.I, self.alpha, -self.s)


class TripleError(ValueError):
    pass


class ContainmentError(TripleError):
    pass


class NormError(TripleError):
    pass


class OrientationError(TripleError):
    pass


def triple_violations(t: OrbitTriple) -> list[str]:
    """Names of the violated triple relations (empty when valid)."""
    L = t.parent
    n = L.n
    out = []
    if n < 4:
        return ["n<4"]
    target = L.ideal_If(n - 3) * t.alpha
    if not (t.I * t.I) <= target:
        out.append("containment")
    if t.I.norm() != abs(Fraction(t.s)):
        out.append("ideal-norm")
    if t.alpha.norm() != Fraction(t.s) ** 2 * L.f0 ** (n - 3):
        out.append("element-norm")
    return out


def validate_triple(t: OrbitTriple) -> None:
    bad = triple_violations(t)
    if "n<4" in bad:
        raise DegenerateFormError("triple constructions need n >= 4")
    if "containment" in bad:
        raise ContainmentError("I^2 is not contained in alpha I_f(n-3)")
    if bad:
        raise NormError("norm relation fails: " + ", ".join(bad))
