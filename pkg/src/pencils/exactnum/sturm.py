"""Real root counting with Sturm sequences over Q."""

from fractions import Fraction

from .poly import Poly, is_squarefree


def sturm_sequence(f: Poly) -> list[Poly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r)
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signs_at_infinity(seq, positive: bool):
    out = []
    for g in seq:
        lc = g.lc
        if not positive and g.degree % 2:
            lc = -lc
        out.append(lc)
    return out


def sturm_real_root_count(f: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots of a squarefree f over Q.

    With ``lo``/``hi`` the count is restricted to the half-open interval
    (lo, hi]; the default is the whole real line.
    """
    if f.p is not None:
        raise ValueError("Sturm counting needs a polynomial over Q")
    if f.degree < 1:
        return 0
    if not is_squarefree(f):
        raise ValueError("polynomial is not squarefree")
    seq = sturm_sequence(f)
    if lo is None:
        left = _signs_at_infinity(seq, positive=False)
    else:
        left = [g(Fraction(lo)) for g in seq]
    if hi is None:
        right = _signs_at_infinity(seq, positive=True)
    else:
        right = [g(Fraction(hi)) for g in seq]
    return _sign_changes(left) - _sign_changes(right)
