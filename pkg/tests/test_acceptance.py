"""Acceptance criteria 1-10 at their stated sizes and time limits.

Each criterion is a function that raises AssertionError on failure and
returns a short detail string.  Under pytest every criterion is one test
and the conftest hook prints one PASS/FAIL line per criterion at the end
of the session; ``python tests/test_acceptance.py`` prints the same lines.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pencils.descent import (  # noqa: E402
    CurvePoint,
    integral_orbit_from_divisor,
    mumford_from_points,
    norm_condition_check,
    one_point_integral_orbit,
    soluble_plane_from_point,
)
from pencils.exactnum import charpoly  # noqa: E402
from pencils.forms import BinaryForm, binary_discriminant, invariant_form  # noqa: E402
from pencils.localglobal import (  # noqa: E402
    CongruenceError,
    parity_certificate,
    reduction_classify_odd,
    two_adic_split_node_check,
)
from pencils.exactnum import Poly  # noqa: E402
from pencils.orbits import (  # noqa: E402
    brute_force_census_n2,
    census_Fq,
    orbit_formula,
    pencil_from_triple,
    random_valid_form,
    real_classification,
    sl_order,
    stabilizer_oracle,
    theta_action_from_pencil,
)
from pencils.order import EtaleAlgebra, ideal_If, trace_dual_check  # noqa: E402

from _gen import (  # noqa: E402
    curve_with_points,
    curve_with_weierstrass,
    divisor_case,
    random_generic_form,
    random_square_end_form,
)

SEED = 20231016
RESULTS: dict = {}


def criterion_1():
    a = binary_discriminant(BinaryForm([3, -12, 0, 11, -11]))
    b = binary_discriminant(BinaryForm([-1, 2, 104, -104, -2764]))
    assert a == -40252707, a
    assert b == -146176, b
    return f"{a}, {b}"


def criterion_2():
    L = EtaleAlgebra(BinaryForm([-1, 0, 2, -2, 3]))  # g = t^4 - 2t^2 + 2t - 3, f_0 = -1
    th = L.theta
    alpha = th ** 3 - th
    N = alpha.norm()
    assert N == -36, N
    r = norm_condition_check(L, alpha)
    assert r.status == "witness" and r.norm / L.f0 == r.root ** 2 == 36
    return f"N = {N}, N/f_0 = {r.root}^2"


def criterion_3():
    rng = random.Random(SEED)
    checked = 0
    for n in (2, 4, 6):
        for q in (3, 5, 7, 11, 13):
            for _ in range(200):
                f = random_valid_form(n, q, rng)
                r = census_Fq(f)
                assert r.orbit_count == orbit_formula(r.degrees, n)
                assert r.stabilizer_size == stabilizer_oracle(r.degrees, n), (f, r)
                assert r.mass == sl_order(n, q), (f, r)
                checked += 1
    return f"{checked} forms"


def criterion_4():
    detail = []
    for q in (3, 5):
        rows = brute_force_census_n2(q)
        want = sl_order(2, q)
        for f, row in rows.items():
            assert row.pairs == want, (q, f, row.pairs)
            r = census_Fq(BinaryForm(f, q))
            assert len(row.orbit_sizes) == r.orbit_count, (q, f)
            assert all(s == want // r.stabilizer_size for s in row.orbit_sizes), (q, f)
        detail.append(f"q={q}: {len(rows)} forms x {want} pairs")
    return "; ".join(detail)


def criterion_5():
    rng = random.Random(SEED)
    count = 0
    for i in range(500):
        n = 4 if i % 2 == 0 else 6
        f = random_square_end_form(rng, n, bound=50)
        t = one_point_integral_orbit(f).plus
        L = t.parent
        P = pencil_from_triple(L, t)
        assert invariant_form(P) == f, f
        assert P.is_integral(), f
        assert all(P.A[i][j] == P.A[j][i] and P.B[i][j] == P.B[j][i] for i in range(n) for j in range(n))
        assert charpoly(theta_action_from_pencil(P)) == L.g, f
        count += 1
    return f"{count} forms"


def criterion_6():
    rng = random.Random(SEED)
    count = 0
    for _ in range(100):
        f, pts = divisor_case(rng, n=6, m=3, lead=(-1, 1))
        D = mumford_from_points(f, pts)
        assert D.m == 3
        t = integral_orbit_from_divisor(f, D).plus
        L = t.parent
        target = ideal_If(L, 3) * t.alpha
        assert (t.I * t.I) <= target, f
        c = abs(pts[0][1] * pts[1][1] * pts[2][1])
        assert t.I.norm() == Fraction(c) / abs(L.f0) ** 3, (f, pts)
        count += 1
    return f"{count} divisors"


def criterion_7():
    rng = random.Random(SEED)
    points = weier = 0
    curves = set()
    for i in range(20):
        n = (4, 6, 8)[i % 3]
        f, pts = curve_with_points(rng, n, k=3)
        L = EtaleAlgebra(f)
        for x, z in pts:
            plane = soluble_plane_from_point(L, CurvePoint(x, 1, z))
            assert plane.is_isotropic(), (f, x, z)
            points += 1
        curves.add(f)
    for i in range(6):
        f, r = curve_with_weierstrass(rng, (4, 6, 8)[i % 3])
        plane = soluble_plane_from_point(EtaleAlgebra(f), CurvePoint(r, 1, 0))
        assert plane.is_isotropic(), (f, r)
        points += 1
        weier += 1
        curves.add(f)
    assert points >= 100 and len(curves) >= 20 and weier >= 5
    return f"{points} points on {len(curves)} curves, {weier} Weierstrass"


def criterion_8():
    forms = [BinaryForm([1, 0, 3, 0, 2]), BinaryForm([-1, 0, -3, 0, -2]), BinaryForm([1, 0, -5, 0, 4])]
    reps = [real_classification(f) for f in forms]
    assert tuple(r.orbit_count for r in reps) == (2, 0, 4)
    assert tuple(r.soluble_count for r in reps) == (2, 0, 2)
    assert tuple(r.stabilizer_size for r in reps) == (4, None, 4)
    return "orbits (2, 0, 4), soluble (2, 0, 2), stabilizers (4, -, 4)"


def criterion_9():
    rng = random.Random(SEED)
    for i in range(500):
        n = 4 if i % 2 == 0 else 6
        f = random_generic_form(rng, n, bound=20)
        L = EtaleAlgebra(f)
        L.build_order()  # raises on a closure failure
        assert L.order_discriminant() == binary_discriminant(f), f
        for k in range(n):
            for j in range(n - k):
                assert ideal_If(L, k) * ideal_If(L, j) == ideal_If(L, k + j), (f, k, j)
        assert trace_dual_check(L), f
    return "500 forms"


def criterion_10():
    family = Poly([8, 0, 1, 0, 0, 4])  # 4x^5 + x^2 + 8
    assert two_adic_split_node_check(family)
    assert parity_certificate(family).conclusion == "rank-sum-odd"
    assert reduction_classify_odd(Poly([1, 1, 0, 0, 1]), 5).kind == "GoodWithRoot"
    toric = Poly([-4, 1]) ** 2 * Poly([0, -1, 0, 1])
    assert reduction_classify_odd(toric, 7).kind == "SplitSemistableToric1"
    # negative controls
    assert not two_adic_split_node_check(Poly([4, 0, 1, 0, 0, 4]))
    with pytest.raises(CongruenceError):
        two_adic_split_node_check(Poly([8, 0, 3, 0, 0, 4]))
    assert parity_certificate(Poly([1, 0, 0, 0, 0, 1])).conclusion == "refused"
    assert parity_certificate(Poly([4, 0, 1, 0, 0, 4])).conclusion == "refused"
    return "examples and negative controls"


CRITERIA = [
    (1, "golden discriminants", criterion_1, 1.0),
    (2, "golden norm and norm condition", criterion_2, 1.0),
    (3, "F_q census vs formulas", criterion_3, 120.0),
    (4, "exhaustive n=2 oracle", criterion_4, 300.0),
    (5, "round-trip construction", criterion_5, 300.0),
    (6, "divisor construction", criterion_6, 300.0),
    (7, "isotropy", criterion_7, None),
    (8, "real classification", criterion_8, 1.0),
    (9, "order identities", criterion_9, 180.0),
    (10, "local-global suite", criterion_10, 1.0),
]


def run_criterion(num, fn, limit):
    start = time.perf_counter()
    try:
        detail = fn()
        elapsed = time.perf_counter() - start
        ok = limit is None or elapsed < limit
        if not ok:
            detail = f"{detail}; over the {limit:g} s limit"
    except AssertionError as e:
        elapsed = time.perf_counter() - start
        ok, detail = False, f"assertion failed: {e}"
    RESULTS[num] = (ok, elapsed, detail)
    return ok, elapsed, detail


def format_line(num):
    name = next(c[1] for c in CRITERIA if c[0] == num)
    ok, elapsed, detail = RESULTS[num]
    return f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name} ({elapsed:.2f} s): {detail}"


@pytest.mark.parametrize("num,name,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, limit):
    ok, _, detail = run_criterion(num, fn, limit)
    print(format_line(num))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, _, fn, limit in CRITERIA:
        ok, _, _ = run_criterion(num, fn, limit)
        failed += not ok
        print(format_line(num), flush=True)
    sys.exit(1 if failed else 0)
