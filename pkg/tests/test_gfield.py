import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrdcensus.gfield import (
    FieldError,
    MonicCubic,
    MonicLinear,
    SigmaError,
    build_field,
    conjugates,
    cubic_roots,
    eval_cubic,
    expand_conjugate_product,
    frobenius,
    irreducible_cubics,
    min_poly,
    phi,
    prime_power,
    sigma,
    sigmas,
)

from conftest import ext, field

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


@pytest.mark.parametrize("q", SMALL_Q)
def test_inverses_exhaustive(q):
    F = field(q)
    for x in range(1, q):
        assert F.mul(x, F.inv(x)) == 1


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    F = field(q)
    els = list(F.elements())
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        assert F.add(a, F.neg(a)) == 0
    for a, b, c in itertools.product(els, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


def test_prime_field_two_is_xor():
    F = build_field(2)
    assert list(F.elements()) == [0, 1]
    for a, b in itertools.product(range(2), repeat=2):
        assert F.add(a, b) == a ^ b
        assert F.mul(a, b) == a & b


def test_f4_uses_smallest_irreducible_quadratic():
    # monic quadratics over F_2 by integer value: t^2, t^2+1, t^2+t, t^2+t+1; only the last is irreducible
    F = build_field(4)
    assert F.modulus == (1, 1, 1)
    # t * t = t + 1 -> index 2 * 2 = 3
    assert F.mul(2, 2) == 3


@pytest.mark.parametrize("q", [0, 1, 6, 10, 12, 15])
def test_non_prime_power_rejected(q):
    assert prime_power(q) is None
    with pytest.raises(FieldError):
        build_field(q)


def test_prime_power_detection():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)


def test_f8_defining_cubic(E2):
    assert E2.cubic == MonicCubic(1, 1, 0)  # x^3 + x + 1
    assert E2.size == 8


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_extension_structure(q):
    E = ext(q)
    F = E.base
    assert E.size == q**3
    assert all(eval_cubic(F, E.cubic, x) != 0 for x in F.elements())
    for k in E.elements():
        assert frobenius(E, k, 0) == k
        assert frobenius(E, frobenius(E, k, 1), 2) == k
        assert frobenius(E, frobenius(E, frobenius(E, k, 1), 1), 1) == k
    fixed = [k for k in E.elements() if frobenius(E, k, 1) == k]
    assert fixed == list(range(q))


def test_frobenius_of_t_is_t_squared(E2):
    t = E2.t()
    assert frobenius(E2, t, 1) == E2.mul(t, t)


def test_frobenius_is_qth_power(E3):
    for k in E3.elements():
        assert frobenius(E3, k, 1) == E3.pow(k, 3)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_sigma_on_base_field(q):
    E = ext(q)
    F = E.base
    three = F.from_int(3)
    for k in F.elements():
        assert sigmas(E, k) == (F.mul(three, k), F.mul(three, F.mul(k, k)), F.pow(k, 3))


def test_sigmas_of_t(E2):
    assert sigmas(E2, E2.t()) == (0, 1, 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_sigmas_lie_in_base_field(q):
    E = ext(q)
    for k in E.elements():
        assert all(E.in_base(s) for s in sigmas(E, k))


@pytest.mark.parametrize("q", [2, 3])
def test_conjugate_product_expansion(q):
    E = ext(q)
    F = E.base
    for k in E.elements():
        s1, s2, s3 = sigmas(E, k)
        assert expand_conjugate_product(E, k) == (F.neg(s1), s2, F.neg(s3))


def test_sigma_rejects_bad_index(E2):
    with pytest.raises(ValueError):
        sigma(E2, 4, 1)


def test_sigma_error_is_runtime_error():
    assert issubclass(SigmaError, RuntimeError)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 26), st.integers(0, 26))
def test_norm_multiplicative(k, l):
    E = ext(3)
    F = E.base
    assert sigma(E, 3, E.mul(k, l)) == F.mul(sigma(E, 3, k), sigma(E, 3, l))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 63), st.integers(0, 63))
def test_trace_additive(k, l):
    E = ext(4)
    F = E.base
    assert sigma(E, 1, E.add(k, l)) == F.add(sigma(E, 1, k), sigma(E, 1, l))


def test_phi_zero(E2):
    assert phi(E2, 0, 0) == 0


@pytest.mark.parametrize("q", [2, 3])
def test_phi_at_conjugate_is_square(q):
    E = ext(q)
    for k in E.elements():
        for n in (1, 2):
            assert phi(E, k, frobenius(E, k, n)) == E.mul(k, k)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 124), st.integers(0, 124))
def test_phi_frobenius_equivariant(k, kh):
    E = ext(5)
    lhs = frobenius(E, phi(E, k, kh), 1)
    assert lhs == phi(E, frobenius(E, k, 1), frobenius(E, kh, 1))


def test_min_poly_examples(E2):
    assert min_poly(E2, 0) == MonicLinear(0)
    assert min_poly(E2, E2.t()) == MonicCubic(1, 1, 0)
    assert min_poly(E2, 0).degree == 1 and min_poly(E2, E2.t()).degree == 3


@pytest.mark.parametrize("q", [2, 3, 4])
def test_min_poly_shared_by_conjugates(q):
    E = ext(q)
    for k in E.elements():
        assert min_poly(E, k) == min_poly(E, frobenius(E, k, 1))


@pytest.mark.parametrize("q,count", [(2, 2), (3, 8), (4, 20), (5, 40), (7, 112), (8, 168), (9, 240)])
def test_irreducible_cubic_counts(q, count):
    assert len(irreducible_cubics(field(q))) == count


def test_irreducibles_q2():
    assert set(irreducible_cubics(field(2))) == {MonicCubic(1, 1, 0), MonicCubic(1, 0, 1)}


def test_irreducibles_have_no_roots_and_are_sorted():
    F = field(3)
    fs = irreducible_cubics(F)
    for f in fs:
        assert all(eval_cubic(F, f, x) != 0 for x in F.elements())
    reducible = [f for f in itertools.product(range(3), repeat=3) if MonicCubic(*f) not in fs]
    for f in reducible:
        assert any(eval_cubic(F, MonicCubic(*f), x) == 0 for x in F.elements())
    assert fs[0] == ext(3).cubic


def test_cubic_roots_q2(E2):
    t = E2.t()
    t2 = E2.mul(t, t)
    assert set(cubic_roots(E2, MonicCubic(1, 1, 0))) == {t, t2, E2.add(t2, t)}


@pytest.mark.parametrize("q", [2, 3])
def test_cubic_roots_min_poly(q):
    E = ext(q)
    for f in irreducible_cubics(E.base):
        roots = cubic_roots(E, f)
        assert roots == conjugates(E, roots[0])
        assert min_poly(E, roots[0]) == f


def test_cubic_roots_reducible_rejected(E2):
    with pytest.raises(FieldError):
        cubic_roots(E2, MonicCubic(0, 0, 0))


def test_describe():
    assert field(8).describe() == "F_8 = F_2[t]/(t^3+t+1)"
    assert field(5).describe() == "F_5 = Z/5"
