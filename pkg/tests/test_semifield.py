import itertools
import random

import pytest

from mrdcensus import mat3
from mrdcensus.census import brute_force_S, expected_class_counts
from mrdcensus.gfield import MonicCubic, irreducible_cubics
from mrdcensus.menichetti import sigma_matrices
from mrdcensus.rankcode import is_mrd
from mrdcensus.semifield import (
    Kind,
    NotMrdError,
    SemifieldView,
    classify,
    dual_triple,
    exhaustive_associative,
    exhaustive_commutative,
    exhaustive_zero_divisors,
    has_zero_divisors,
    is_associative,
    is_commutative,
    is_self_dual,
    multiplication_table,
    multiply,
    right_multiplication_matrices,
    structure_identity_check,
)
from mrdcensus.suites import all_pairs_zero_divisor_sweep

from conftest import ext, field

E1, E2V, E3V = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def field_view(F, f):
    C = mat3.companion(f)
    return SemifieldView.from_matrices(F, C, mat3.matmul(F, C, C))


def views_of_S(q):
    return [SemifieldView(t) for t in brute_force_S(q).triples]


@pytest.mark.parametrize("q", [2, 3])
def test_identity_element(q):
    F = field(q)
    vecs = list(itertools.product(range(q), repeat=3))
    for v in views_of_S(q):
        for y in vecs:
            assert multiply(v, E1, y) == y
            assert multiply(v, y, E1) == y


@pytest.mark.parametrize("q", [2, 3])
def test_basis_products(q):
    for v in views_of_S(q):
        assert multiply(v, E2V, E2V) == E3V
        assert multiply(v, E2V, E3V) == v.f_coeffs
        assert multiply(v, E3V, E2V) == v.z_col2


def test_field_triple_has_no_zero_divisors():
    for q in (2, 3, 4):
        F = field(q)
        for f in irreducible_cubics(F):
            v = field_view(F, f)
            assert not has_zero_divisors(v)
            assert is_commutative(v) and is_associative(v)
            assert classify(v) is Kind.FIELD
            assert is_self_dual(v)
            assert dual_triple(v) == v


def test_singular_combination_gives_zero_divisor():
    F = field(3)
    C = mat3.companion(irreducible_cubics(F)[0])
    # second column of C_f + Z vanishes, so e2 is killed by x = e2 + e3
    Z = mat3.from_columns((0, 0, 1), (0, 0, F.neg(1)), (0, 0, 0))
    v = SemifieldView.from_matrices(F, C, Z)
    assert mat3.det(F, mat3.add(F, C, Z)) == 0
    assert multiply(v, (0, 1, 1), E2V) == (0, 0, 0)
    assert has_zero_divisors(v)
    with pytest.raises(NotMrdError):
        classify(v)


def test_mrd_iff_no_zero_divisors_normalized_q2():
    F = field(2)
    n = 0
    for f in irreducible_cubics(F):
        C = mat3.companion(f)
        for rest in itertools.product(range(2), repeat=6):
            Z = (0, rest[0], rest[1], 0, rest[2], rest[3], 1, rest[4], rest[5])
            v = SemifieldView.from_matrices(F, C, Z)
            assert exhaustive_zero_divisors(multiplication_table(v)) == (not is_mrd(v.triple))
            n += 1
    assert n == 128


def test_mrd_iff_no_zero_divisors_all_pairs_q2():
    pairs, disagreements = all_pairs_zero_divisor_sweep(2)
    assert pairs == 512**2
    assert disagreements == 0


def test_no_zero_divisors_on_S_q3():
    for v in views_of_S(3):
        assert not exhaustive_zero_divisors(multiplication_table(v))


@pytest.mark.parametrize("q", [2, 3])
def test_criteria_match_exhaustive_checks(q):
    for v in views_of_S(q):
        table = multiplication_table(v)
        assert is_commutative(v) == exhaustive_commutative(table) == (v.f_coeffs == v.z_col2)
        assert is_associative(v) == exhaustive_associative(table)


def test_noncommutative_witness():
    for v in views_of_S(3):
        if v.f_coeffs != v.z_col2:
            assert multiply(v, E2V, E3V) != multiply(v, E3V, E2V)
            assert not is_commutative(v)


def test_associativity_witness():
    for v in views_of_S(3):
        lhs = multiply(v, multiply(v, E2V, E2V), E2V)
        rhs = multiply(v, E2V, multiply(v, E2V, E2V))
        assert lhs == v.z_col2 and rhs == v.f_coeffs


@pytest.mark.parametrize("q", [3, 5])
def test_commutative_parameter_triples(q):
    E = ext(q)
    F = E.base
    seen = 0
    for k in E.elements():
        s1, s2 = sigma_matrices(E, k, k)
        v = SemifieldView.from_matrices(F, s1, s2)
        if not is_mrd(v.triple):
            continue
        assert is_commutative(v)
        assert not is_associative(v)
        assert classify(v) is Kind.COMMUTATIVE_NONASSOCIATIVE
        seen += 1
    assert seen == q**3 - q


@pytest.mark.parametrize("q", [2, 3])
def test_dual_triple(q):
    for v in views_of_S(q):
        w = dual_triple(v)
        assert is_mrd(w.triple) and w.is_normalized()
        assert dual_triple(w) == v
        assert right_multiplication_matrices(v) == (w.cf, w.z)


def test_dual_rejects_non_mrd():
    F = field(2)
    C = mat3.companion(MonicCubic(1, 1, 0))
    v = SemifieldView.from_matrices(F, C, (0, 0, 0, 0, 0, 0, 1, 0, 0))
    assert not is_mrd(v.triple)
    with pytest.raises(NotMrdError):
        dual_triple(v)


def test_structure_identity_q2():
    E = ext(2)
    xs = list(itertools.product(E.elements(), repeat=3))
    for v in views_of_S(2):
        assert all(structure_identity_check(v, E, x) for x in xs)


def test_structure_identity_q3_sampled():
    E = ext(3)
    rng = random.Random(11)
    for v in views_of_S(3):
        assert structure_identity_check(v, E, (1, 0, 0))
        for _ in range(30):
            assert structure_identity_check(v, E, tuple(rng.randrange(27) for _ in range(3)))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_class_counts(q):
    counts = {k: 0 for k in Kind}
    for v in views_of_S(q):
        counts[classify(v)] += 1
    n = (q**3 - q) // 3
    assert counts[Kind.FIELD] == n
    assert counts[Kind.COMMUTATIVE_NONASSOCIATIVE] == (n if q % 2 else 0)
    assert {k.value: c for k, c in counts.items()} == expected_class_counts(q)


def test_q3_known_counts():
    assert expected_class_counts(2) == {"field": 2, "commutative_nonassociative": 0, "proper_noncommutative": 0}
    assert expected_class_counts(3) == {"field": 8, "commutative_nonassociative": 8, "proper_noncommutative": 96}
