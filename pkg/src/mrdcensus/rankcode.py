"""Rank-metric predicates and exact counting formulas."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import mat3
from .gfield import FieldCtx, MonicCubic, prime_power
from .mat3 import Mat3

ExactCount = int
ExactRatio = Fraction


def projective_points(q: int) -> list[tuple[int, int, int]]:
    """Representatives of P^2(F_q) in the order (1,*,*), (0,1,*), (0,0,1)."""
    pts = [(1, y, z) for y in range(q) for z in range(q)]
    pts += [(0, 1, z) for z in range(q)]
    pts.append((0, 0, 1))
    return pts


def projective_points_n(q: int, n: int) -> list[tuple[int, ...]]:
    """Vectors of F_q^n whose first nonzero coordinate is 1."""
    out = []
    for lead in range(n):
        for tail in itertools.product(range(q), repeat=n - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    return out


class DegenerateSpanError(ValueError):
    pass


@dataclass(frozen=True)
class MrdTriple:
    """Ordered matrix triple; equality and hashing use the matrices only."""

    ctx: FieldCtx = field(compare=False, repr=False)
    a1: Mat3
    a2: Mat3
    a3: Mat3

    @property
    def mats(self) -> tuple[Mat3, Mat3, Mat3]:
        return (self.a1, self.a2, self.a3)

    @cached_property
    def span_dim(self) -> int:
        return mat3.rank_rows(self.ctx, self.mats)

    @cached_property
    def rank_distance(self) -> int:
        if self.span_dim != 3:
            raise DegenerateSpanError("rank distance needs three independent matrices")
        F = self.ctx
        return min(mat3.rank(F, mat3.lincomb(F, x, self.mats)) for x in projective_points(F.q))

    def combination(self, x: Sequence[int]) -> Mat3:
        return mat3.lincomb(self.ctx, x, self.mats)

    def is_normalized(self) -> bool:
        a, b, c = self.a2[2], self.a2[5], self.a2[8]
        return (
            self.a1 == mat3.IDENTITY
            and self.a2 == mat3.companion(MonicCubic(a, b, c))
            and mat3.column(self.a3, 0) == (0, 0, 1)
        )

    def encode(self) -> tuple[int, ...]:
        return self.a1 + self.a2 + self.a3


def span_dim(t: MrdTriple) -> int:
    return t.span_dim


def rank_distance(t: MrdTriple) -> int:
    return t.rank_distance


def is_mrd(t: MrdTriple) -> bool:
    """det(x1 A1 + x2 A2 + x3 A3) != 0 on every projective point; early exit."""
    F = t.ctx
    mats = t.mats
    for x in projective_points(F.q):
        if mat3.det(F, mat3.lincomb(F, x, mats)) == 0:
            return False
    return True


def gaussian_binomial(n: int, k: int, q: int) -> ExactCount:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    assert num % den == 0
    return num // den


def _require_prime_power(q: int) -> None:
    if prime_power(q) is None:
        raise ValueError(f"q={q} is not a prime power")


class InconsistentCountError(ArithmeticError):
    pass


def reduction_factor(q: int) -> Fraction:
    """Proportion contributed by each element of S."""
    return Fraction(
        (q - 1) * (q**3 - 1) * (q**3 - q) ** 2 * (q**3 - q**2) ** 2,
        (q**7 - 1) * (q**9 - 1) * (q**9 - q),
    )


def proportion_of_mrd(q: int, s_count: ExactCount) -> ExactRatio:
    _require_prime_power(q)
    if s_count < 0:
        raise ValueError("s_count must be non-negative")
    ratio = s_count * reduction_factor(q)
    t_hat = ratio * gaussian_binomial(9, 3, q)
    if t_hat.denominator != 1:
        raise InconsistentCountError(f"|S|={s_count} gives non-integral MRD count {t_hat} at q={q}")
    return ratio


def closed_form_proportion(q: int) -> ExactRatio:
    _require_prime_power(q)
    return Fraction(
        (q - 1) * (q**3 - 1) * (q**3 - q) ** 3 * (q**3 - q**2) ** 2 * (q**3 - q**2 - q - 1),
        3 * (q**7 - 1) * (q**9 - 1) * (q**9 - q),
    )


def mrd_count(q: int, proportion: ExactRatio) -> ExactCount:
    t_hat = proportion * gaussian_binomial(9, 3, q)
    if t_hat.denominator != 1:
        raise InconsistentCountError(f"non-integral MRD count {t_hat}")
    return t_hat.numerator


def generic_is_mrd(matrices: Sequence[Sequence[Sequence[int]]], F: FieldCtx, delta: int) -> bool:
    """Exhaustive MRD test for small m x n codes: every nonzero combination has rank >= delta."""
    if not matrices:
        raise ValueError("need at least one matrix")
    m = len(matrices[0])
    n = len(matrices[0][0]) if m else 0
    for A in matrices:
        if len(A) != m or any(len(row) != n for row in A):
            raise ValueError("all matrices must share one shape")
    if not 1 <= delta <= min(m, n):
        raise ValueError(f"delta={delta} out of range for {m}x{n}")
    k = max(m, n) * (min(m, n) - delta + 1)
    if len(matrices) != k:
        raise ValueError(f"an MRD code with these parameters has dimension {k}, got {len(matrices)}")
    flat = [[x for row in A for x in row] for A in matrices]
    for coeffs in projective_points_n(F.q, k):
        entries = [0] * (m * n)
        for s, A in zip(coeffs, flat):
            if s:
                entries = [F.add(e, F.mul(s, a)) for e, a in zip(entries, A)]
        rows = [entries[i * n:(i + 1) * n] for i in range(m)]
        if mat3.rank_rows(F, rows) < delta:
            return False
    return True
