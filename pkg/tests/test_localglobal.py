import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pencils.exactnum import Poly, is_square_mod, roots_mod_p
from pencils.forms import BinaryForm, binary_discriminant
from pencils.localglobal import (
    CERT_STATEMENT,
    CongruenceError,
    local_soluble_good_odd,
    parity_certificate,
    reduction_classify_odd,
    twist_family,
    two_adic_split_node_check,
    verify_reduction_witness,
)

FAMILY = Poly([8, 0, 1, 0, 0, 4])  # 4x^5 + x^2 + 8
QUARTIC = Poly([1, 1, 0, 0, 1])  # x^4 + x + 1
TORIC = Poly([-4, 1]) ** 2 * Poly([0, -1, 0, 1])  # (x - 4)^2 (x^3 - x)


# reduction types

def test_good_with_root():
    rc = reduction_classify_odd(QUARTIC, 5)
    assert rc.kind == "GoodWithRoot" and rc.witness["root"] == 3
    assert binary_discriminant(BinaryForm([1, 0, 0, 1, 1])) % 5 == 4
    assert verify_reduction_witness(QUARTIC, rc)


def test_split_toric():
    rc = reduction_classify_odd(TORIC, 7)
    assert rc.kind == "SplitSemistableToric1"
    assert rc.witness["a"] == 4 and rc.witness["h_a"] % 7 == 4
    assert verify_reduction_witness(TORIC, rc)


def test_square_times_unit():
    f = Poly([1, 0, 1]) ** 2 * 3  # 3 (x^2 + 1)^2, x^2 + 1 irreducible mod 7
    assert reduction_classify_odd(f, 7).kind == "SquareTimesUnit"
    assert local_soluble_good_odd(f, 7, search_depth=0) is None


def _rootless(p, rng, n=4):
    while True:
        f = Poly([rng.randint(1, p - 1)] + [rng.randint(0, p - 1) for _ in range(n - 1)] + [1])
        fb = f.reduce_mod(p)
        if not roots_mod_p(fb) and reduction_classify_odd(f, p).kind not in ("SquareTimesUnit",):
            return f


def test_weil_bound_and_other():
    rng = random.Random(1)
    f = _rootless(67, rng)  # 67 > 4 * 4^2
    rc = reduction_classify_odd(f, 67)
    assert rc.kind == "SolubleByWeil"
    assert local_soluble_good_odd(f, 67) is True
    g = _rootless(7, rng)
    assert reduction_classify_odd(g, 7).kind == "Other"


def test_rejects_even_prime():
    with pytest.raises(ValueError):
        reduction_classify_odd(QUARTIC, 2)


def test_local_solubility_examples():
    assert local_soluble_good_odd(QUARTIC, 5) is True
    assert local_soluble_good_odd(TORIC, 7) is True


@given(st.lists(st.integers(-30, 30), min_size=4, max_size=7), st.sampled_from([3, 5, 7, 11, 13, 101]))
@settings(max_examples=150, deadline=None)
def test_witnesses_reverify(coeffs, p):
    f = Poly(coeffs)
    if f.degree < 3:
        return
    rc = reduction_classify_odd(f, p)
    assert verify_reduction_witness(f, rc)


@given(st.integers(0, 10 ** 6), st.sampled_from([5, 7, 11, 13]), st.integers(1, 12))
@settings(max_examples=80, deadline=None)
def test_toric_class_stable_under_square_rescaling(seed, p, u):
    if u % p == 0:
        return
    rng = random.Random(seed)
    a = rng.randrange(p)
    h = Poly([rng.randrange(p) for _ in range(3)] + [1])
    f = Poly([-a, 1]) ** 2 * h
    rc = reduction_classify_odd(f, p)
    rc2 = reduction_classify_odd(f * (u * u), p)
    assert (rc.kind == "SplitSemistableToric1") == (rc2.kind == "SplitSemistableToric1")
    if rc.kind == "SplitSemistableToric1":
        assert is_square_mod(rc.witness["h_a"], p) and is_square_mod(rc2.witness["h_a"], p)


# twists

def test_twist_family():
    tw = twist_family(FAMILY)
    assert tw.congruence and tw.certificate == CERT_STATEMENT
    assert [k for k, _ in tw.twists] == ["f", "-f", "2f", "-2f"]
    assert tw.heights()["-2f"] == 2 * tw.heights()["f"]
    plain = twist_family(Poly([1, 0, 0, 0, 0, 1]))
    assert not plain.congruence and plain.certificate is None and len(plain.twists) == 4


def test_twist_discriminant_ratios():
    # Delta(c f) = c^(2n-2) Delta(f) for n = 5; sympy oracle, frozen
    base = BinaryForm([4, 0, 0, 1, 0, 8])
    d = binary_discriminant(base)
    assert d == 3276813824
    ratios = {c: binary_discriminant(base.scale(c)) / d for c in (-1, 2, -2)}
    assert ratios == {-1: 1, 2: 256, -2: 256}


# 2-adic split node and the parity certificate

def test_split_node_example():
    r = two_adic_split_node_check(FAMILY)
    assert r.ok and r.singular == [(0, 0)]
    assert list(r.model.coeffs) == [0, 0, 0, 0, 0, 1]


def test_split_node_negative():
    assert not two_adic_split_node_check(Poly([4, 0, 1, 0, 0, 4]))
    with pytest.raises(CongruenceError):
        two_adic_split_node_check(Poly([8, 0, 3, 0, 0, 4]))


def test_parity_certificate():
    cert = parity_certificate(FAMILY)
    assert cert.issued and cert.conclusion == "rank-sum-odd"
    assert [h["status"] for h in cert.hypotheses] == ["pass"] * 5
    refused = parity_certificate(Poly([1, 0, 0, 0, 0, 1]))
    assert not refused.issued
    assert refused.hypotheses[0]["name"] == "mod-8-congruences"
    assert refused.hypotheses[0]["status"] == "fail"


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
@settings(max_examples=80, deadline=None)
def test_parity_never_issues_without_split_node(ks):
    # a_2 = 1 mod 8 and every other coefficient divisible by 4; the other classes vary
    coeffs = [4 * k for k in ks]
    coeffs[2] = 1 + 8 * ks[2]
    if coeffs[5] == 0:
        coeffs[5] = 4
    f = Poly(coeffs)
    node = two_adic_split_node_check(f)
    cert = parity_certificate(f)
    if not node:
        assert not cert.issued
