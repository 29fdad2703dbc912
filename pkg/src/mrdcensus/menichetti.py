"""Two-parameter description of the normalized MRD triples (I, C_f, Z).

A pair (k, kh) of elements of F_{q^3} gives the matrices Sigma1 (the companion
matrix of the minimal polynomial of k) and Sigma2.  The triple (I, Sigma1,
Sigma2) is MRD exactly when 1, k and phi(k, kh) are linearly independent over
F_q, and two admissible pairs give the same triple exactly when they are
Frobenius-equivalent (see ``class_members``).
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import mat3
from .gfield import ExtCtx, build_extension, build_field, conjugates, frobenius, phi, sigmas
from .mat3 import Mat3
from .rankcode import MrdTriple, is_mrd


class ClassKind(str, enum.Enum):
    FIELD = "field"
    COMMUTATIVE = "commutative"
    PROPER = "proper"
    INADMISSIBLE = "inadmissible"


@dataclass(frozen=True)
class ParamPair:
    k: int
    kh: int
    admissible: bool
    class_kind: ClassKind


def is_admissible(E: ExtCtx, k: int, kh: int) -> bool:
    """1, k, phi(k, kh) linearly independent over F_q."""
    cols = (E.coords(1), E.coords(k), E.coords(phi(E, k, kh)))
    return mat3.det(E.base, mat3.from_columns(*cols)) != 0


def make_param(E: ExtCtx, k: int, kh: int) -> ParamPair:
    admissible = is_admissible(E, k, kh)
    if not admissible:
        kind = ClassKind.INADMISSIBLE
    elif kh in (frobenius(E, k, 1), frobenius(E, k, 2)):
        kind = ClassKind.FIELD
    elif kh == k:
        kind = ClassKind.COMMUTATIVE
    else:
        kind = ClassKind.PROPER
    return ParamPair(k, kh, admissible, kind)


def sigma_matrices(E: ExtCtx, k: int, kh: int) -> tuple[Mat3, Mat3]:
    F = E.base
    m, ad, sb, ng = F.mul, F.add, F.sub, F.neg
    s1k, s2k, s3k = sigmas(E, k)
    s1h, s2h, s3h = sigmas(E, kh)
    s1p, s2p, _ = sigmas(E, E.mul(k, kh))
    s3sum = sigmas(E, E.add(k, kh))[2]
    sig1 = (0, 0, s3k,
            1, 0, ng(s2k),
            0, 1, s1k)
    sig2 = (0, s3h, sb(ad(m(s1k, s3h), m(s1h, s3k)), s2p),
            0, ng(s2h), ng(s3sum),
            1, s1h, sb(m(s1k, s1h), s1p))
    assert all(x < F.q for x in sig1 + sig2)
    return sig1, sig2


def class_members(E: ExtCtx, k: int, kh: int) -> set[tuple[int, int]]:
    """All parameter pairs with the same (Sigma1, Sigma2) as (k, kh), for k, kh outside F_q."""
    ks = conjugates(E, k)
    members = {(ks[r], frobenius(E, kh, r)) for r in range(3)}
    for n in (1, 2):
        if kh == ks[n]:
            for r in range(3):
                members.add((ks[r], ks[(n + r) % 3]))
                members.add((ks[(n + r) % 3], ks[r]))
    return members


def param_key(E: ExtCtx, pair: tuple[int, int]):
    return (E.coords(pair[0]), E.coords(pair[1]))


def canonical_param(E: ExtCtx, p: ParamPair) -> ParamPair:
    k, kh = min(class_members(E, p.k, p.kh), key=lambda pr: param_key(E, pr))
    return make_param(E, k, kh)


class SCounts(NamedTuple):
    S: int
    S_prime: int
    S_dblprime: int


def count_formulas(q: int) -> SCounts:
    s_prime = (q**3 - q) * (q**3 - q**2 - q - 2)
    s_dbl = 2 * (q**3 - q)
    s = (q**3 - q) // 3 * (q**3 - q**2 - q - 1)
    # |S| = (|S'| + |S''|/2) / 3
    assert 6 * s == 2 * s_prime + s_dbl
    return SCounts(s, s_prime, s_dbl)


class Sweep(NamedTuple):
    """Raw admissibility sweep over all of F_{q^3}^2."""

    s_prime: int
    s_dblprime: int
    inadmissible: int
    commutative: int  # admissible pairs with kh == k


def _sweep_chunk(q: int, ks: list[int]):
    E = build_extension(build_field(q))
    sp = sd = bad = comm = 0
    found: dict[tuple[Mat3, Mat3], tuple[int, int]] = {}
    for k in ks:
        k1, k2 = frobenius(E, k, 1), frobenius(E, k, 2)
        for kh in E.elements():
            if not is_admissible(E, k, kh):
                bad += 1
                continue
            if kh in (k1, k2):
                sd += 1
            else:
                sp += 1
                comm += kh == k
            key = sigma_matrices(E, k, kh)
            pair = min(class_members(E, k, kh), key=lambda pr: param_key(E, pr))
            prev = found.get(key)
            if prev is None or param_key(E, pair) < param_key(E, prev):
                found[key] = pair
    return Sweep(sp, sd, bad, comm), found


def _partition(items: list[int], workers: int) -> list[list[int]]:
    return [items[i::workers] for i in range(workers)]


def _run_sweep(E: ExtCtx, workers: int):
    ks = list(E.elements())
    chunks = _partition(ks, max(1, workers))
    if workers <= 1:
        results = [_sweep_chunk(E.q, ks)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_chunk, [E.q] * len(chunks), chunks))
    totals = Sweep(*(sum(r[0][i] for r in results) for i in range(4)))
    merged: dict[tuple[Mat3, Mat3], tuple[int, int]] = {}
    for _, found in results:
        for key, pair in found.items():
            prev = merged.get(key)
            if prev is None or param_key(E, pair) < param_key(E, prev):
                merged[key] = pair
    return totals, merged


def admissibility_sweep(E: ExtCtx, workers: int = 1) -> Sweep:
    return _run_sweep(E, workers)[0]


def enumerate_S_parametric(E: ExtCtx, workers: int = 1) -> list[MrdTriple]:
    """All (I, Sigma1, Sigma2) over admissible pairs, deduplicated, sorted by matrix encoding."""
    _, merged = _run_sweep(E, workers)
    F = E.base
    out = []
    for (s1, s2) in sorted(merged):
        t = MrdTriple(F, mat3.IDENTITY, s1, s2)
        assert s2[0] == 0 and s2[3] == 0 and s2[6] == 1
        assert is_mrd(t)
        out.append(t)
    return out


def canonical_params_of_S(E: ExtCtx, workers: int = 1) -> dict[tuple[Mat3, Mat3], tuple[int, int]]:
    """Map from each (Sigma1, Sigma2) to its lexicographically smallest parameter pair."""
    return _run_sweep(E, workers)[1]


def _ext_det(E: ExtCtx, M: Sequence[int]) -> int:
    a0, a1, a2, a3, a4, a5, a6, a7, a8 = M
    m, sb = E.mul, E.sub
    t0 = m(a0, sb(m(a4, a8), m(a5, a7)))
    t1 = m(a1, sb(m(a3, a8), m(a5, a6)))
    t2 = m(a2, sb(m(a3, a7), m(a4, a6)))
    return E.add(sb(t0, t1), t2)


def det_factorization_sides(E: ExtCtx, k: int, kh: int, x: Sequence[int]) -> tuple[int, int]:
    """det(x1 I + x2 Sigma1 + x3 Sigma2) and prod_i (x1 + k<i> x2 + phi(k,kh)<i> x3) at x in F_{q^3}^3."""
    sig1, sig2 = sigma_matrices(E, k, kh)
    M = []
    for u, s1, s2 in zip(mat3.IDENTITY, sig1, sig2):
        M.append(E.add(E.add(E.mul(x[0], u), E.mul(x[1], s1)), E.mul(x[2], s2)))
    lhs = _ext_det(E, M)
    ph = phi(E, k, kh)
    rhs = 1
    for r in range(3):
        lin = E.add(E.add(x[0], E.mul(frobenius(E, k, r), x[1])), E.mul(frobenius(E, ph, r), x[2]))
        rhs = E.mul(rhs, lin)
    return lhs, rhs
