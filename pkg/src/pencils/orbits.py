"""Triples to pencils and back, orbit censuses over F_q and R.

Orbit counts over F_q are read off the parity of the factor degrees of
f(x, 1).  ``stabilizer_oracle`` recomputes the stabilizer independently
by enumerating sign vectors on the roots, and ``brute_force_census_n2``
walks every pair of binary quadratic forms for n = 2.
"""

from __future__ import annotations

import csv
import io
import random
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, prod

from .exactnum import DEFAULT_SEED, check_odd_prime, charpoly, factor_prime_field, mat_det_inv
from .forms import (
    BinaryForm,
    DegenerateFormError,
    Pencil,
    ProjGroupElem,
    act,
    binary_discriminant,
    gl2_transform,
    invariant_form,
    invariant_form_2x2,
    real_root_count,
)
from .order import (
    ContainmentError,
    EtaleAlgebra,
    NormError,
    OrbitTriple,
    OrientationError,
    ideal_norm_oriented,
)


def _require_generic(f: BinaryForm):
    if f.f0 == 0:
        raise DegenerateFormError("f_0 = 0")
    if binary_discriminant(f) == 0:
        raise DegenerateFormError("Delta(f) = 0")


# triples and pencils

def oriented_basis(t: OrbitTriple):
    """A Z-basis of I whose wedge is s (1 ^ zeta_1 ^ ... ^ zeta_(n-1))."""
    basis = t.I.basis()
    d = ideal_norm_oriented(t.I, basis)
    if abs(d) != abs(t.s):
        raise NormError(f"N(I) = {abs(d)} but |s| = {abs(t.s)}")
    if d != t.s:
        basis = [-basis[0]] + basis[1:]
    return basis


def pencil_from_triple(L: EtaleAlgebra, t: OrbitTriple, basis=None, check: bool = True) -> Pencil:
    """The pair (A, B) attached to an orbit triple.

    A_ij and B_ij are the zeta_(n-1) and zeta_(n-2) coordinates of
    lambda_i lambda_j / alpha in the basis of I_f(n-3).  Each violated
    relation raises its own error class.
    """
    n = L.n
    if n < 4:
        raise DegenerateFormError("triple constructions need n >= 4")
    if t.I.parent != L:
        raise ValueError("triple lives in a different algebra")
    if check:
        if t.alpha.norm() != Fraction(t.s) ** 2 * L.f0 ** (n - 3):
            raise NormError("N(alpha) != s^2 f_0^(n-3)")
        if t.I.norm() != abs(Fraction(t.s)):
            raise NormError("N(I) != |s|")
    if basis is None:
        basis = oriented_basis(t)
    else:
        try:
            d = ideal_norm_oriented(t.I, basis)
        except ValueError as e:
            raise NormError(str(e)) from e
        if d == -t.s:
            raise OrientationError("basis orientation is -s")
        if d != t.s:
            raise NormError("basis determinant differs from s")
    ainv = t.alpha.inverse()
    A = [[Fraction(0)] * n for _ in range(n)]
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            co = L.ideal_coords(basis[i] * basis[j] * ainv, n - 3)
            if check and any(c.denominator != 1 for c in co):
                raise ContainmentError("I^2 is not contained in alpha I_f(n-3)")
            A[i][j] = A[j][i] = co[n - 1]
            B[i][j] = B[j][i] = co[n - 2]
    return Pencil(A, B)


def theta_action_from_pencil(P: Pencil, allow_shift: bool = False):
    """M = A^-1 B, the action of theta on K^n.

    With ``allow_shift`` a singular A is handled by moving to the pencil
    (A - kB, B), whose invariant form is f(x, y + kx); the return value is
    then (M, k, shifted form).  Without it a singular A raises.
    """
    p = P.p
    d, Ainv = mat_det_inv(P.A, p)
    if Ainv is not None:
        M = _mul(Ainv, P.B, p)
        return (M, 0, invariant_form(P)) if allow_shift else M
    if not allow_shift:
        raise DegenerateFormError("A is singular")
    f = invariant_form(P)
    ks = range(p) if p is not None else range(P.n + 1)
    for k in ks:
        if f(1, k) != 0:
            A2 = [[P.A[i][j] - k * P.B[i][j] for j in range(P.n)] for i in range(P.n)]
            if p is not None:
                A2 = [[v % p for v in r] for r in A2]
            _, Ainv = mat_det_inv(A2, p)
            return _mul(Ainv, P.B, p), k, gl2_transform(f, ((1, 0), (k, 1)))
    raise DegenerateFormError("no shift makes the leading coefficient nonzero")


def _mul(X, Y, p):
    n = len(X)
    out = [[sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[v % p for v in r] for r in out] if p is not None else out


def theta_charpoly(P: Pencil):
    return charpoly(theta_action_from_pencil(P))


def equivalent_triple(t: OrbitTriple, c) -> OrbitTriple:
    """(cI, c^2 alpha, N(c) s)."""
    return OrbitTriple(t.I * c, c * c * t.alpha, c.norm() * Fraction(t.s))


@dataclass
class EquivalenceWitness:
    c: object
    t: Fraction
    M: list  # basis change: basis2 = (c basis1) M
    g: ProjGroupElem


def equivalence_witness(L: EtaleAlgebra, t1: OrbitTriple, c) -> tuple[Pencil, Pencil, EquivalenceWitness]:
    """Pencils for t1 and (cI, c^2 alpha, N(c)s) together with a verified g.

    Both pencils are built from their own oriented HNF bases, so they differ
    by the change of basis M with det M = 1; act(g, P1) = P2 for g = M^T.
    """
    t2 = equivalent_triple(t1, c)
    b1 = [c * b for b in oriented_basis(t1)]
    b2 = oriented_basis(t2)
    n = L.n
    X = [[b.coords[i] for b in b1] for i in range(n)]
    Y = [[b.coords[i] for b in b2] for i in range(n)]
    _, Xinv = mat_det_inv(X)
    M = _mul(Xinv, Y, None)
    if any(v.denominator != 1 for r in M for v in r):
        raise ArithmeticError("basis change is not integral")
    P1 = pencil_from_triple(L, t1)
    P2 = pencil_from_triple(L, t2)
    g = ProjGroupElem([list(r) for r in zip(*M)], 1)
    if act(g, P1) != P2:
        raise ArithmeticError("witness does not move P1 to P2")
    return P1, P2, EquivalenceWitness(c, Fraction(1), M, g)


# finite fields

def sl_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * prod(q ** i - 1 for i in range(2, n + 1))


def orbit_formula(degrees, n: int) -> int:
    """Orbit count (= stabilizer size) from the factor degrees of f(x, 1)."""
    m = len(degrees)
    if all(d % 2 == 0 for d in degrees):
        return 2 ** m if n % 4 == 0 else 2 ** (m - 1)
    return 2 ** (m - 2)


def stabilizer_oracle(cycles, n: int) -> int:
    """Fixed points of a root permutation on (mu_2^n)_{N=1}/mu_2.

    ``cycles`` are the cycle lengths of Frobenius (or complex conjugation)
    on the n roots.  A class [e] is fixed iff sigma(e) = +-e, and each class
    has two representatives.
    """
    perm, start = [], 0
    for d in cycles:
        perm += [start + (i + 1) % d for i in range(d)]
        start += d
    if start != n:
        raise ValueError("cycle lengths must sum to n")
    count = 0
    for e in product((1, -1), repeat=n):
        if prod(e) != 1:
            continue
        moved = tuple(e[perm[i]] for i in range(n))
        if moved == e or moved == tuple(-v for v in e):
            count += 1
    return count // 2


@dataclass
class CensusReport:
    q: int
    f: BinaryForm
    degrees: list
    orbit_count: int
    stabilizer_size: int
    mass: int

    def to_json(self, brief: bool = False) -> dict:
        if brief:
            return {"orbits": self.orbit_count, "stab": self.stabilizer_size, "mass": self.mass}
        return {
            "q": self.q,
            "form": [str(c) for c in self.f.coeffs],
            "degrees": self.degrees,
            "orbits": self.orbit_count,
            "stab": self.stabilizer_size,
            "mass": self.mass,
        }


def _as_Fq(f: BinaryForm, q: int | None) -> BinaryForm:
    if f.p is None:
        if q is None:
            raise ValueError("a prime q is required")
        return f.reduce_mod(check_odd_prime(q))
    check_odd_prime(f.p)
    if q is not None and q != f.p:
        raise ValueError("modulus mismatch")
    return f


def factor_profile(f: BinaryForm, seed: int = DEFAULT_SEED) -> list[int]:
    _, facs = factor_prime_field(f.dehomogenize(), seed=seed)
    return sorted(g.degree for g, _ in facs)


def census_Fq(f: BinaryForm, q: int | None = None, seed: int = DEFAULT_SEED) -> CensusReport:
    f = _as_Fq(f, q)
    _require_generic(f)
    n, q = f.n, f.p
    if n % 2:
        raise ValueError("census needs n even")
    degrees = factor_profile(f, seed)
    orbits = orbit_formula(degrees, n)
    stab = orbits
    mass = orbits * sl_order(n, q) // stab
    return CensusReport(q, f, degrees, orbits, stab, mass)


def random_valid_form(n: int, q: int, rng: random.Random) -> BinaryForm:
    while True:
        coeffs = [rng.randrange(1, q)] + [rng.randrange(q) for _ in range(n)]
        f = BinaryForm(coeffs, q)
        if binary_discriminant(f) != 0:
            return f


def all_valid_forms(n: int, q: int):
    for rest in product(range(q), repeat=n):
        for f0 in range(1, q):
            f = BinaryForm((f0,) + rest, q)
            if binary_discriminant(f) != 0:
                yield f


def _census_chunk(args):
    n, q, coeff_lists, seed = args
    return [census_Fq(BinaryForm(c, q), seed=seed).to_json() for c in coeff_lists]


def census_sweep(n: int, q: int, count: int | None = None, seed: int = DEFAULT_SEED,
                 jobs: int = 1) -> list[dict]:
    """Census of ``count`` random valid forms (all of them when count is None).

    Output is sorted by form coefficients so it does not depend on ``jobs``.
    """
    check_odd_prime(q)
    if count is None:
        forms = [f.coeffs for f in all_valid_forms(n, q)]
    else:
        rng = random.Random(seed)
        forms = [random_valid_form(n, q, rng).coeffs for _ in range(count)]
    forms = sorted(set(forms))
    if jobs <= 1:
        rows = _census_chunk((n, q, forms, seed))
    else:
        chunks = [forms[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = [r for part in ex.map(_census_chunk, [(n, q, c, seed) for c in chunks]) for r in part]
    return sorted(rows, key=lambda r: [int(c) for c in r["form"]])


def _pgl2(q: int):
    """Representatives of PGL_2(F_q): first nonzero entry scaled to 1."""
    out = []
    for a, b, c, d in product(range(q), repeat=4):
        if (a * d - b * c) % q == 0:
            continue
        lead = next(v for v in (a, b, c, d) if v)
        if lead == 1:
            out.append((a, b, c, d))
    return out


def _act2(g, pair, q):
    a, b, c, d = g
    t = pow(a * d - b * c, -1, q)
    out = []
    for m11, m12, m22 in pair:
        # t g M g^T for M = [[m11, m12], [m12, m22]]
        r11 = a * a * m11 + 2 * a * b * m12 + b * b * m22
        r12 = a * c * m11 + (a * d + b * c) * m12 + b * d * m22
        r22 = c * c * m11 + 2 * c * d * m12 + d * d * m22
        out.append((t * r11 % q, t * r12 % q, t * r22 % q))
    return tuple(out)


@dataclass
class BruteRow:
    form: tuple
    pairs: int
    orbit_sizes: list = field(default_factory=list)


def brute_force_census_n2(q: int) -> dict[tuple, BruteRow]:
    """Walk all q^6 pairs of binary quadratic forms over F_q (q in {3, 5}).

    Only invariant forms with f_0 != 0 and Delta != 0 are reported.  Orbits
    are computed under PGL_2(F_q) acting by t g A g^T, t = det(g)^-1.
    """
    if q not in (3, 5):
        raise ValueError("brute force is limited to q in {3, 5}")
    by_form: dict[tuple, list] = defaultdict(list)
    trip = list(product(range(q), repeat=3))
    for A in trip:
        for B in trip:
            f = invariant_form_2x2(A, B, q)
            if f[0] == 0 or (f[1] * f[1] - 4 * f[0] * f[2]) % q == 0:
                continue
            by_form[f].append((A, B))
    G = _pgl2(q)
    out = {}
    for f in sorted(by_form):
        pairs = by_form[f]
        seen: set = set()
        sizes = []
        for P in pairs:
            if P in seen:
                continue
            orb = {_act2(g, P, q) for g in G}
            seen |= orb
            sizes.append(len(orb))
        if len(seen) != len(pairs):
            raise ArithmeticError("orbit walk left the fibre")
        out[f] = BruteRow(f, len(pairs), sorted(sizes))
    return out


def brute_table_csv(rows: dict[tuple, BruteRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["f0", "f1", "f2", "pairs", "orbit_sizes"])
    for r in rows.values():
        w.writerow(list(r.form) + [r.pairs, " ".join(map(str, r.orbit_sizes))])
    return buf.getvalue()


# the reals

@dataclass
class RealClassReport:
    r1: int
    r2: int
    m: int
    definite: str | None  # "positive", "negative" or None
    orbit_count: int
    soluble_count: int
    stabilizer_size: int | None

    def to_json(self) -> dict:
        return asdict(self)


def real_classification(f: BinaryForm) -> RealClassReport:
    if f.p is not None:
        raise ValueError("real classification needs a form over Q")
    _require_generic(f)
    n = f.n
    if n % 2:
        raise ValueError("real classification needs n even")
    r1 = real_root_count(f)
    r2 = (n - r1) // 2
    m = r1 // 2
    if r1 == 0:
        if f.f0 < 0:
            return RealClassReport(r1, r2, m, "negative", 0, 0, None)
        k = 2 if n % 4 == 0 else 1
        stab = 2 ** (n // 2) if n % 4 == 0 else 2 ** (n // 2 - 1)
        return RealClassReport(r1, r2, m, "positive", k, k, stab)
    return RealClassReport(r1, r2, m, None, 2 ** (r1 - 2), 2 ** (m - 1), 2 ** (n // 2 + m - 2))


def stabilizer_size_field(f: BinaryForm, field: str = "Fq", q: int | None = None) -> int | None:
    """Stabilizer order in (SL_n/mu_2)(K) for K = F_q or R.

    Over Q the answer depends on quadratic subfields of L and is not
    computed.  Negative definite forms over R have no orbits; None is
    returned.
    """
    if field == "Fq":
        return census_Fq(f, q).stabilizer_size
    if field == "R":
        return real_classification(f).stabilizer_size
    if field == "Q":
        raise NotImplementedError("stabilizers over Q are not computed")
    raise ValueError(f"unknown field {field!r}")


def even_odd_factorization_count(f: BinaryForm, q: int | None = None) -> dict:
    """Even-degree factor subsets and odd factorizations of f.

    ``even`` counts subsets of the irreducible factors (empty set and f
    included) of even total degree.  ``odd`` says whether f = gh with g, h
    of odd degree over the base field; ``odd_conjugate`` whether such a
    splitting exists with g, h conjugate over the quadratic extension,
    which over F_q happens iff every factor has even degree and n = 2 mod 4.
    Over Q only rational factors are seen, so conjugate splittings are not
    detected there.
    """
    if q is not None or f.p is not None:
        f = _as_Fq(f, q)
        _require_generic(f)
        degrees = factor_profile(f)
        conj = all(d % 2 == 0 for d in degrees) and f.n % 4 == 2
    else:
        import sympy  # slow to load, only needed over Q

        if binary_discriminant(f) == 0:
            raise DegenerateFormError("Delta(f) = 0")
        x, y = sympy.symbols("x y")
        expr = sum(sympy.Rational(str(c)) * x ** (f.n - i) * y ** i for i, c in enumerate(f.coeffs))
        _, facs = sympy.factor_list(expr)
        degrees = sorted(sympy.Poly(h, x, y).total_degree() for h, _ in facs)
        conj = None
    even = 0
    for mask in product((0, 1), repeat=len(degrees)):
        if sum(d for d, b in zip(degrees, mask) if b) % 2 == 0:
            even += 1
    return {"even": even, "odd": any(d % 2 for d in degrees), "odd_conjugate": conj, "degrees": degrees}


def small_constants(kind: str, **args):
    if kind == "sl_order":
        return sl_order(args["n"], args["q"])
    if kind == "a_nu":
        g, nu = args["g"], str(args["nu"])
        if nu in ("inf", "infinity"):
            return Fraction(1, 2 ** g)
        if nu == "2":
            return Fraction(2 ** g)
        return Fraction(1)
    if kind == "S":
        m, k = args["m"], args["k"]
        return sum(comb(m, j) for j in range(1, k + 1, 2))
    raise ValueError(f"unknown constant {kind!r}")
