"""Exact arithmetic kernel: rationals, dense polynomials, resultants,
prime-field factorization, Sturm counting, Hermite normal forms."""

from fractions import Fraction

from .gfp import (
    DEFAULT_SEED,
    PrimeFieldElem,
    factor_degrees,
    factor_prime_field,
    is_irreducible,
    is_square_mod,
    legendre,
    roots_mod_p,
    squarefree_decomposition,
)
from .linalg import (
    IntMatrix,
    RankError,
    charpoly,
    det,
    hnf,
    hnf_span,
    identity,
    lattice_contains,
    random_unimodular,
    mat_det_inv,
    mat_mul,
    solve,
    transpose,
)
from .poly import (
    DomainError,
    Poly,
    check_odd_prime,
    interpolate,
    is_squarefree,
    poly_discriminant,
    poly_gcd,
    poly_resultant,
    poly_xgcd,
    rational_roots,
)
from .sturm import sturm_real_root_count

Rational = Fraction

__all__ = [name for name in dir() if not name.startswith("_")]
