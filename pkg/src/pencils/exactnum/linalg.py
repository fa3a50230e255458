"""Exact linear algebra: determinants and inverses over Q or F_p, Hermite
normal forms of integer lattices, characteristic polynomials.

Matrices are lists of rows.  Integer matrices (``IntMatrix``) are plain
lists of lists of Python ints.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import Poly, interpolate

IntMatrix = list[list[int]]


class RankError(ValueError):
    pass


def identity(n: int, one=1) -> list[list]:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*M)] if M else []


def mat_mul(A, B, p: int | None = None):
    Bt = transpose(B)
    out = [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]
    if p is not None:
        out = [[v % p for v in r] for r in out]
    return out


def mat_det_inv(M: Sequence[Sequence], p: int | None = None):
    """Exact determinant and inverse by Gauss-Jordan elimination.

    Over Q (``p is None``) entries are coerced to Fraction; over F_p to
    ints mod p.  The inverse is ``None`` when the determinant vanishes.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    if p is None:
        conv = Fraction
        inv = lambda a: 1 / a  # noqa: E731
        red = lambda a: a  # noqa: E731
    else:
        conv = lambda a: int(a) % p  # noqa: E731
        inv = lambda a: pow(a, -1, p)  # noqa: E731
        red = lambda a: a % p  # noqa: E731
    a = [[conv(v) for v in row] + [conv(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(M)]
    det = conv(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return conv(0), None
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = red(-det)
        pv = a[col][col]
        det = red(det * pv)
        ip = inv(pv)
        a[col] = [red(v * ip) for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                fac = a[r][col]
                a[r] = [red(x - fac * y) for x, y in zip(a[r], a[col])]
    return det, [row[n:] for row in a]


def det(M, p: int | None = None):
    if not M:
        return Fraction(1) if p is None else 1
    return mat_det_inv(M, p)[0]


def solve(M, b, p: int | None = None):
    """Solve M x = b for square invertible M."""
    d, Minv = mat_det_inv(M, p)
    if Minv is None:
        raise ZeroDivisionError("singular system")
    x = [sum(r * v for r, v in zip(row, b)) for row in Minv]
    return [v % p for v in x] if p is not None else x


def charpoly(M) -> Poly:
    """det(t*I - M) over Q, by interpolation at t = 0..n."""
    n = len(M)
    pts = []
    for t in range(n + 1):
        shifted = [[(t if i == j else 0) - Fraction(M[i][j]) for j in range(n)]
                   for i in range(n)]
        pts.append((t, det(shifted)))
    return interpolate(pts)


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _hnf_columns(cols: list[list[int]], m: int) -> list[list[int]]:
    """Column HNF kernel.  Returns the nonzero columns, echelon from the bottom.

    Rows are processed bottom-up; each pivot row gets one column with a
    positive pivot and zeros to its left, and entries of the later columns
    in that row are reduced into [0, pivot).
    """
    cols = [list(c) for c in cols]
    k = len(cols)
    j = k - 1
    for i in range(m - 1, -1, -1):
        if j < 0:
            break
        for l in range(j):
            b = cols[l][i]
            if b == 0:
                continue
            a = cols[j][i]
            g, u, v = _xgcd(a, b)
            cj, cl = cols[j], cols[l]
            ag, bg = a // g, b // g
            cols[j] = [u * x + v * y for x, y in zip(cj, cl)]
            cols[l] = [ag * y - bg * x for x, y in zip(cj, cl)]
        piv = cols[j][i]
        if piv == 0:
            continue
        if piv < 0:
            cols[j] = [-x for x in cols[j]]
            piv = -piv
        for l in range(j + 1, k):
            q = cols[l][i] // piv
            if q:
                cols[l] = [x - q * y for x, y in zip(cols[l], cols[j])]
        j -= 1
    return cols[j + 1:]


def hnf(M: IntMatrix) -> IntMatrix:
    """Column-style Hermite normal form of a full-column-rank integer matrix.

    The result spans the same lattice (column span), has positive pivots,
    zeros below each pivot and reduced entries to the right of each pivot.
    For a square nonsingular input it is upper triangular.
    """
    m = len(M)
    if m == 0:
        return []
    k = len(M[0])
    cols = transpose(M)
    out = _hnf_columns(cols, m)
    if len(out) != k:
        raise RankError("matrix does not have full column rank")
    return transpose(out)


def hnf_span(gens: Sequence[Sequence[int]], dim: int) -> IntMatrix:
    """HNF (as a dim x dim matrix) of the full-rank lattice spanned by ``gens``."""
    cols = [list(g) for g in gens if any(g)]
    out = _hnf_columns(cols, dim)
    out = [c for c in out if any(c)]
    if len(out) != dim:
        raise RankError(f"generators span a lattice of rank {len(out)} < {dim}")
    return transpose(out)


def lattice_contains(H: IntMatrix, v: Sequence) -> bool:
    """Whether v (rational entries allowed) lies in the column span of a
    square upper-triangular nonsingular H with integer coefficients."""
    n = len(H)
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(v[i]) - sum(H[i][j] * x[j] for j in range(i + 1, n))
        xi = s / H[i][i]
        if xi.denominator != 1:
            return False
        x[i] = xi
    return True


def random_unimodular(n: int, rng, moves: int = 30) -> IntMatrix:
    """Product of random elementary integer matrices (det = +-1)."""
    U = identity(n)
    for _ in range(moves):
        i, j = rng.sample(range(n), 2)
        kind = rng.randrange(3)
        if kind == 0:
            c = rng.randint(-3, 3)
            for r in range(n):
                U[r][j] += c * U[r][i]
        elif kind == 1:
            for r in range(n):
                U[r][i], U[r][j] = U[r][j], U[r][i]
        else:
            for r in range(n):
                U[r][i] = -U[r][i]
    return U
