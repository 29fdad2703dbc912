"""3x3 matrices over F_q as flat row-major 9-tuples of field indices.

Entry (i, j) (1-based, as z_ij) sits at position ``3*(i-1) + (j-1)``.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from .gfield import FieldCtx, MonicCubic

Mat3 = tuple[int, ...]
Vec3 = tuple[int, int, int]

IDENTITY: Mat3 = (1, 0, 0, 0, 1, 0, 0, 0, 1)
ZERO: Mat3 = (0,) * 9


class SingularMatrixError(ValueError):
    pass


def companion(f: MonicCubic) -> Mat3:
    a, b, c = f
    return (0, 0, a,
            1, 0, b,
            0, 1, c)


def column(A: Mat3, j: int) -> Vec3:
    return (A[j], A[3 + j], A[6 + j])


def from_columns(c0: Sequence[int], c1: Sequence[int], c2: Sequence[int]) -> Mat3:
    return (c0[0], c1[0], c2[0],
            c0[1], c1[1], c2[1],
            c0[2], c1[2], c2[2])


def add(F: FieldCtx, A: Mat3, B: Mat3) -> Mat3:
    ad = F.add_t
    return tuple(ad[x][y] for x, y in zip(A, B))


def sub(F: FieldCtx, A: Mat3, B: Mat3) -> Mat3:
    sb = F.sub_t
    return tuple(sb[x][y] for x, y in zip(A, B))


def scale(F: FieldCtx, s: int, A: Mat3) -> Mat3:
    row = F.mul_t[s]
    return tuple(row[x] for x in A)


def lincomb(F: FieldCtx, coeffs: Sequence[int], mats: Sequence[Mat3]) -> Mat3:
    out = ZERO
    for s, A in zip(coeffs, mats):
        if s:
            out = add(F, out, scale(F, s, A))
    return out


def matmul(F: FieldCtx, A: Mat3, B: Mat3) -> Mat3:
    m, ad = F.mul_t, F.add_t
    out = []
    for i in range(3):
        r0, r1, r2 = A[3 * i], A[3 * i + 1], A[3 * i + 2]
        for j in range(3):
            out.append(ad[ad[m[r0][B[j]]][m[r1][B[3 + j]]]][m[r2][B[6 + j]]])
    return tuple(out)


def matvec(F: FieldCtx, A: Mat3, x: Sequence[int]) -> Vec3:
    m, ad = F.mul_t, F.add_t
    return tuple(
        ad[ad[m[A[3 * i]][x[0]]][m[A[3 * i + 1]][x[1]]]][m[A[3 * i + 2]][x[2]]]
        for i in range(3)
    )


def det(F: FieldCtx, A: Mat3) -> int:
    """Cofactor expansion along the first row."""
    m, ad, sb = F.mul_t, F.add_t, F.sub_t
    a0, a1, a2, a3, a4, a5, a6, a7, a8 = A
    t0 = m[a0][sb[m[a4][a8]][m[a5][a7]]]
    t1 = m[a1][sb[m[a3][a8]][m[a5][a6]]]
    t2 = m[a2][sb[m[a3][a7]][m[a4][a6]]]
    return ad[sb[t0][t1]][t2]


def rank_rows(F: FieldCtx, rows: Sequence[Sequence[int]]) -> int:
    """Rank of a small dense matrix given as a list of rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][col])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                s = rows[i][col]
                rows[i] = [F.sub(x, F.mul(s, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def rank(F: FieldCtx, A: Mat3) -> int:
    return rank_rows(F, (A[0:3], A[3:6], A[6:9]))


def trace(F: FieldCtx, A: Mat3) -> int:
    return F.add(F.add(A[0], A[4]), A[8])


def char_poly(F: FieldCtx, A: Mat3) -> MonicCubic:
    """det(xI - A) = x^3 - c x^2 - b x - a, returned as (a, b, c)."""
    m, ad, sb = F.mul_t, F.add_t, F.sub_t
    minors = ad[ad[sb[m[A[0]][A[4]]][m[A[1]][A[3]]]][sb[m[A[0]][A[8]]][m[A[2]][A[6]]]]][
        sb[m[A[4]][A[8]]][m[A[5]][A[7]]]
    ]
    return MonicCubic(det(F, A), F.neg(minors), trace(F, A))


def inverse(F: FieldCtx, A: Mat3) -> Mat3:
    d = det(F, A)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    m, sb = F.mul_t, F.sub_t
    a0, a1, a2, a3, a4, a5, a6, a7, a8 = A
    adj = (
        sb[m[a4][a8]][m[a5][a7]], sb[m[a2][a7]][m[a1][a8]], sb[m[a1][a5]][m[a2][a4]],
        sb[m[a5][a6]][m[a3][a8]], sb[m[a0][a8]][m[a2][a6]], sb[m[a2][a3]][m[a0][a5]],
        sb[m[a3][a7]][m[a4][a6]], sb[m[a1][a6]][m[a0][a7]], sb[m[a0][a4]][m[a1][a3]],
    )
    return scale(F, F.inv(d), adj)


def conjugate(F: FieldCtx, S: Mat3, A: Mat3) -> Mat3:
    """S^-1 A S."""
    return matmul(F, matmul(F, inverse(F, S), A), S)


def all_matrices(F: FieldCtx) -> Iterator[Mat3]:
    return itertools.product(F.elements(), repeat=9)  # type: ignore[return-value]


def general_linear(F: FieldCtx) -> list[Mat3]:
    return [A for A in all_matrices(F) if det(F, A) != 0]


def gl3_order(q: int) -> int:
    return (q**3 - 1) * (q**3 - q) * (q**3 - q**2)


def det_arrays(F: FieldCtx, M: Sequence) -> np.ndarray:
    """Determinant of many matrices at once; M holds nine index arrays (row-major)."""
    a0, a1, a2, a3, a4, a5, a6, a7, a8 = M
    vm, vs = F.vmul, F.vsub
    t0 = vm(a0, vs(vm(a4, a8), vm(a5, a7)))
    t1 = vm(a1, vs(vm(a3, a8), vm(a5, a6)))
    t2 = vm(a2, vs(vm(a3, a7), vm(a4, a6)))
    return F.vadd(vs(t0, t1), t2)


def matmul_arrays(F: FieldCtx, A: Sequence, B: Sequence) -> list:
    """Entrywise-vectorized product of stacks of matrices given as nine arrays each."""
    vm, va = F.vmul, F.vadd
    return [
        va(va(vm(A[3 * i], B[j]), vm(A[3 * i + 1], B[3 + j])), vm(A[3 * i + 2], B[6 + j]))
        for i in range(3)
        for j in range(3)
    ]
