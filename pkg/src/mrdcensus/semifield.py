"""The 3-dimensional algebra attached to a triple (I, A2, A3).

Multiplication is ``x o y = (x1 I + x2 A2 + x3 A3) y``.  For a normalized MRD
triple (I, C_f, Z) this is a semifield with identity e1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import mat3
from .gfield import ExtCtx, FieldCtx, MonicCubic, eval_cubic
from .mat3 import Mat3, Vec3
from .rankcode import MrdTriple, is_mrd

EXHAUSTIVE_MAX_Q = 3


class Kind(str, enum.Enum):
    FIELD = "field"
    COMMUTATIVE_NONASSOCIATIVE = "commutative_nonassociative"
    PROPER_NONCOMMUTATIVE = "proper_noncommutative"


class NotMrdError(ValueError):
    pass


@dataclass(frozen=True)
class SemifieldView:
    triple: MrdTriple

    @classmethod
    def from_matrices(cls, F: FieldCtx, a2: Mat3, a3: Mat3) -> "SemifieldView":
        return cls(MrdTriple(F, mat3.IDENTITY, a2, a3))

    @property
    def ctx(self) -> FieldCtx:
        return self.triple.ctx

    @property
    def cf(self) -> Mat3:
        return self.triple.a2

    @property
    def z(self) -> Mat3:
        return self.triple.a3

    @property
    def f_coeffs(self) -> tuple[int, int, int]:
        return mat3.column(self.cf, 2)

    @property
    def z_col2(self) -> Vec3:
        """(z1, z2, z3)."""
        return mat3.column(self.z, 1)

    @property
    def z_col3(self) -> Vec3:
        """(z'1, z'2, z'3)."""
        return mat3.column(self.z, 2)

    def is_normalized(self) -> bool:
        return self.triple.is_normalized()

    def left_matrix(self, x: Sequence[int]) -> Mat3:
        return self.triple.combination(x)


def multiply(v: SemifieldView, x: Sequence[int], y: Sequence[int]) -> Vec3:
    return mat3.matvec(v.ctx, v.left_matrix(x), y)


def _vectors(q: int) -> list[Vec3]:
    return list(itertools.product(range(q), repeat=3))  # index = x1*q^2 + x2*q + x3


def _index(q: int, x: Sequence[int]) -> int:
    return (x[0] * q + x[1]) * q + x[2]


def multiplication_table(v: SemifieldView) -> np.ndarray:
    """table[i, j] = index of vec(i) o vec(j); indices follow ``itertools.product`` order."""
    F = v.ctx
    q = F.q
    vecs = _vectors(q)
    table = np.zeros((q**3, q**3), dtype=np.int64)
    for i, x in enumerate(vecs):
        M = v.left_matrix(x)
        for j, y in enumerate(vecs):
            table[i, j] = _index(q, mat3.matvec(F, M, y))
    return table


def exhaustive_zero_divisors(table: np.ndarray) -> bool:
    return bool((table[1:, 1:] == 0).any())


def exhaustive_commutative(table: np.ndarray) -> bool:
    return bool((table == table.T).all())


def exhaustive_associative(table: np.ndarray) -> bool:
    n = table.shape[0]
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    return bool((table[table[x, y], z] == table[x, table[y, z]]).all())


def has_zero_divisors(v: SemifieldView) -> bool:
    F = v.ctx
    if F.q <= EXHAUSTIVE_MAX_Q:
        result = exhaustive_zero_divisors(multiplication_table(v))
    else:
        result = any(
            mat3.det(F, v.left_matrix(x)) == 0
            for x in itertools.product(F.elements(), repeat=3)
            if any(x)
        )
    assert result == (not is_mrd(v.triple))
    return result


def is_commutative(v: SemifieldView) -> bool:
    result = v.f_coeffs == v.z_col2
    if v.ctx.q <= EXHAUSTIVE_MAX_Q:
        assert result == exhaustive_commutative(multiplication_table(v))
    return result


def is_associative(v: SemifieldView) -> bool:
    F = v.ctx
    result = v.z == mat3.matmul(F, v.cf, v.cf)
    if F.q <= EXHAUSTIVE_MAX_Q:
        assert result == exhaustive_associative(multiplication_table(v))
    return result


def dual_matrices(v: SemifieldView) -> tuple[Mat3, Mat3]:
    """(C_g, Z-hat): the matrices of right multiplication by e2 and e3."""
    a, b, c = v.f_coeffs
    z1, z2, z3 = v.z_col2
    zp1, zp2, zp3 = v.z_col3
    cg = (0, 0, z1,
          1, 0, z2,
          0, 1, z3)
    zhat = (0, a, zp1,
            0, b, zp2,
            1, c, zp3)
    return cg, zhat


def dual_triple(v: SemifieldView) -> SemifieldView:
    if not is_mrd(v.triple):
        raise NotMrdError("dual triple is defined for MRD triples only")
    cg, zhat = dual_matrices(v)
    w = SemifieldView.from_matrices(v.ctx, cg, zhat)
    assert is_mrd(w.triple)
    g = MonicCubic(*mat3.column(cg, 2))
    assert all(eval_cubic(v.ctx, g, x) != 0 for x in v.ctx.elements())
    assert dual_matrices(w) == (v.cf, v.z)
    return w


def right_multiplication_matrices(v: SemifieldView) -> tuple[Mat3, Mat3]:
    """Columns y o e2 and y o e3 for y = e1, e2, e3, computed from the product itself."""
    e = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    r2 = mat3.from_columns(*(multiply(v, y, e[1]) for y in e))
    r3 = mat3.from_columns(*(multiply(v, y, e[2]) for y in e))
    return r2, r3


def _ext_matvec(E: ExtCtx, A: Mat3, x: Sequence[int]) -> tuple[int, int, int]:
    return tuple(
        E.add(E.add(E.mul(A[3 * i], x[0]), E.mul(A[3 * i + 1], x[1])), E.mul(A[3 * i + 2], x[2]))
        for i in range(3)
    )


def structure_identity_check(v: SemifieldView, E: ExtCtx, x: Sequence[int]) -> bool:
    """x1 I + x2 C_f + x3 Z == (x | C_g x | Z-hat x) for x in F_{q^3}^3.

    Base-field matrix entries embed into ``E`` unchanged (indices 0..q-1).
    """
    cg, zhat = dual_matrices(v)
    lhs = []
    for i in range(9):
        entry = 0
        for xi, A in zip(x, v.triple.mats):
            entry = E.add(entry, E.mul(xi, A[i]))
        lhs.append(entry)
    col1 = _ext_matvec(E, cg, x)
    col2 = _ext_matvec(E, zhat, x)
    rhs = mat3.from_columns(tuple(x), col1, col2)
    return tuple(lhs) == rhs


def classify(v: SemifieldView) -> Kind:
    if not is_mrd(v.triple):
        raise NotMrdError("classification is defined for MRD triples only")
    if is_associative(v):
        return Kind.FIELD
    if is_commutative(v):
        return Kind.COMMUTATIVE_NONASSOCIATIVE
    return Kind.PROPER_NONCOMMUTATIVE


def is_self_dual(v: SemifieldView) -> bool:
    return dual_matrices(v) == (v.cf, v.z)
