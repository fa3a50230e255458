"""Seeded generators shared by the test modules."""

import random
from fractions import Fraction

from pencils.exactnum import Poly
from pencils.forms import BinaryForm, binary_discriminant


def form_from_poly(fx: Poly) -> BinaryForm:
    return BinaryForm(list(reversed(fx.coeffs)))


def random_generic_form(rng: random.Random, n: int, bound: int = 9) -> BinaryForm:
    while True:
        coeffs = [rng.choice([c for c in range(-bound, bound + 1) if c])]
        coeffs += [rng.randint(-bound, bound) for _ in range(n)]
        f = BinaryForm(coeffs)
        if binary_discriminant(f) != 0:
            return f


def random_square_end_form(rng: random.Random, n: int, bound: int = 50) -> BinaryForm:
    """Integral, f_0 != 0, Delta != 0, |f_i| <= bound and f_n a nonzero square."""
    roots = [c for c in range(1, bound + 1) if c * c <= bound]
    while True:
        c = rng.choice(roots)
        coeffs = [rng.choice([v for v in range(-bound, bound + 1) if v])]
        coeffs += [rng.randint(-bound, bound) for _ in range(n - 1)] + [c * c]
        f = BinaryForm(coeffs)
        if binary_discriminant(f) != 0:
            return f


def divisor_case(rng: random.Random, n: int = 6, m: int = 3, lead=(-1,)):
    """f(x, 1) = R^2 - h P with P = prod(x - a_i); the points (a_i, R(a_i)) lie on z^2 = f.

    ``lead`` lists the allowed leading coefficients of h, so f_0 = -lead.
    """
    while True:
        a = rng.sample(range(-6, 7), m)
        R = Poly([rng.randint(-5, 5) for _ in range(m)])
        h = Poly([rng.randint(-4, 4) for _ in range(n - m)] + [rng.choice(lead)])
        fx = R * R - h * Poly.from_roots(a)
        f = form_from_poly(fx)
        if fx.degree == n and binary_discriminant(f) != 0 and all(R(x) != 0 for x in a):
            return f, [(x, R(x)) for x in a]


def curve_with_points(rng: random.Random, n: int, k: int = 5):
    """A curve z^2 = f(x, 1) through 2k affine points (a_i, +-R(a_i))."""
    while True:
        a = rng.sample(range(-8, 9), k)
        R = Poly([rng.randint(-4, 4) for _ in range(k)])
        h = Poly([rng.randint(-3, 3) for _ in range(n - k)] + [rng.choice([1, -1, 2])])
        fx = R * R - h * Poly.from_roots(a)
        f = form_from_poly(fx)
        if fx.degree == n and binary_discriminant(f) != 0 and all(R(x) != 0 for x in a):
            pts = [(x, R(x)) for x in a] + [(x, -R(x)) for x in a]
            return f, pts


def curve_with_weierstrass(rng: random.Random, n: int):
    """A curve with a rational root r of f(x, 1), i.e. a point (r, 1, 0)."""
    while True:
        r = rng.randint(-4, 4)
        k = Poly([rng.randint(-5, 5) for _ in range(n - 1)] + [rng.choice([1, -2, 3])])
        fx = Poly([-r, 1]) * k
        f = form_from_poly(fx)
        if binary_discriminant(f) != 0:
            return f, r


def frac(x):
    return Fraction(x)
