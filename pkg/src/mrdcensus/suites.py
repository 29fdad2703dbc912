"""Named verification suites behind ``mrdcensus verify``.

Each suite maps a q to a list of CheckResult.  Exhaustive where the spaces are
small, seeded random sampling otherwise.
"""

from __future__ import annotations

import itertools
import random

import numpy as np
from typing import Callable

from . import census, mat3
from .census import CheckResult, _Checker
from .gfield import (
    build_extension,
    build_field,
    conjugates,
    expand_conjugate_product,
    frobenius,
    irreducible_cubics,
    min_poly,
    phi,
    sigma,
    sigmas,
)
from .menichetti import (
    det_factorization_sides,
    enumerate_S_parametric,
    is_admissible,
    sigma_matrices,
)
from .rankcode import (
    closed_form_proportion,
    gaussian_binomial,
    is_mrd,
    proportion_of_mrd,
)
from .semifield import (
    Kind,
    SemifieldView,
    classify,
    dual_triple,
    exhaustive_associative,
    exhaustive_commutative,
    exhaustive_zero_divisors,
    has_zero_divisors,
    is_associative,
    is_commutative,
    multiplication_table,
    multiply,
    right_multiplication_matrices,
    structure_identity_check,
)

DET_SAMPLES = 10_000


def all_pairs_zero_divisor_sweep(q: int = 2) -> tuple[int, int]:
    """Over every (A2, A3) in M_3(F_q)^2: compare 'some nonzero x has det M_x = 0'
    with 'x o y = 0 for some nonzero x, y'.  Returns (pairs tested, disagreements)."""
    F = build_field(q)
    mats = census._all_matrices(q)  # nine arrays of length q^9
    n = len(mats[0])
    i2, i3 = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    A2 = [m[i2.ravel()] for m in mats]
    A3 = [m[i3.ravel()] for m in mats]
    nonzero = [v for v in itertools.product(range(q), repeat=3) if any(v)]
    singular = np.zeros(n * n, dtype=bool)
    zero_div = np.zeros(n * n, dtype=bool)
    for x in nonzero:
        M = [F.sadd(x[0] * (i % 4 == 0), F.vadd(F.smul(x[1], A2[i]), F.smul(x[2], A3[i]))) for i in range(9)]
        singular |= mat3.det_arrays(F, M) == 0
        for y in nonzero:
            prod = [F.vadd(F.vadd(F.smul(y[0], M[3 * r]), F.smul(y[1], M[3 * r + 1])), F.smul(y[2], M[3 * r + 2]))
                    for r in range(3)]
            zero_div |= (prod[0] == 0) & (prod[1] == 0) & (prod[2] == 0)
    return n * n, int((singular != zero_div).sum())


def sigma_suite(q: int, seed: int = 0, long: bool = False) -> list[CheckResult]:
    E = build_extension(build_field(q))
    F = E.base
    chk = _Checker()
    chk.run("sigma_in_base_field", lambda: all(E.in_base(s) for k in E.elements() for s in sigmas(E, k)))

    def expansion():
        for k in E.elements():
            s1, s2, s3 = sigmas(E, k)
            if expand_conjugate_product(E, k) != (F.neg(s1), s2, F.neg(s3)):
                return False
        return True

    chk.run("conjugate_product_expansion", expansion)

    def sigma_inv():
        sig = {k: sigmas(E, k) for k in E.elements()}
        return all(
            (sig[k] == sig[ell]) == (ell in conjugates(E, k))
            for k in E.elements()
            for ell in E.elements()
        )

    chk.run("sigmas_determine_conjugacy_class", sigma_inv)

    def sigma2_addition():
        for x in E.elements():
            for y in E.elements():
                lhs = sigma(E, 2, E.add(x, y))
                rhs = F.add(
                    F.sub(F.add(sigma(E, 2, x), sigma(E, 2, y)), sigma(E, 1, E.mul(x, y))),
                    F.mul(sigma(E, 1, x), sigma(E, 1, y)),
                )
                if lhs != rhs:
                    return False
        return True

    chk.run("sigma2_addition_identity", sigma2_addition)
    chk.run("irreducible_cubic_count", lambda: len(irreducible_cubics(F)) == (q**3 - q) // 3)
    return chk.results


def phi_suite(q: int, seed: int = 0, long: bool = False) -> list[CheckResult]:
    E = build_extension(build_field(q))
    chk = _Checker()
    chk.run(
        "phi_at_conjugates_is_square",
        lambda: all(
            phi(E, k, frobenius(E, k, n)) == E.mul(k, k) for k in E.elements() for n in (1, 2)
        ),
    )
    chk.run(
        "phi_frobenius_equivariant",
        lambda: all(
            frobenius(E, phi(E, k, kh), 1) == phi(E, frobenius(E, k, 1), frobenius(E, kh, 1))
            for k in E.elements()
            for kh in E.elements()
        ),
    )
    return chk.results


def parametrization_suite(q: int, seed: int = 0, long: bool = False) -> list[CheckResult]:
    E = build_extension(build_field(q))
    F = E.base
    chk = _Checker()
    pairs = list(itertools.product(E.elements(), repeat=2))

    def set_equality():
        brute = census.brute_force_S(q)
        param = enumerate_S_parametric(E)
        return set(brute.triples) == set(param), f"brute={brute.count} parametric={len(param)}"

    chk.run("brute_set_equals_parametric_set", set_equality)

    def det_factorization():
        if q == 2:
            points = [(k, kh, x) for k, kh in pairs for x in itertools.product(E.elements(), repeat=3)]
        else:
            rng = random.Random(seed)
            points = [
                (rng.randrange(E.size), rng.randrange(E.size), tuple(rng.randrange(E.size) for _ in range(3)))
                for _ in range(DET_SAMPLES)
            ]
        for k, kh, x in points:
            lhs, rhs = det_factorization_sides(E, k, kh, x)
            if lhs != rhs:
                return False, f"mismatch at k={k} kh={kh} x={x}"
        return True, f"{len(points)} points"

    chk.run("determinant_factorization", det_factorization)

    def eigen_transfer():
        for k, kh in pairs:
            s1, s2 = sigma_matrices(E, k, kh)
            if mat3.char_poly(F, s1) != min_poly(E, k) and not E.in_base(k):
                return False
            if is_admissible(E, k, kh) and mat3.char_poly(F, s2) != min_poly(E, phi(E, k, kh)):
                return False
        return True

    chk.run("char_poly_transfer", eigen_transfer)

    def well_defined():
        for k, kh in pairs:
            base = sigma_matrices(E, k, kh)
            for r in (1, 2):
                if sigma_matrices(E, frobenius(E, k, r), frobenius(E, kh, r)) != base:
                    return False
        return True

    chk.run("sigma_matrices_frobenius_invariant", well_defined)

    def equivalence():
        rep = census.verify_param_equivalence(q)
        return rep.ok, f"class sizes {rep.class_sizes}"

    chk.run("parameter_equivalence_classes", equivalence)
    return chk.results


def stabilizer_suite(q: int, seed: int = 0, long: bool = False) -> list[CheckResult]:
    F = build_field(q)
    G = census._gl3(F)
    chk = _Checker()
    chk.record("gl3_order", len(G[0]) == mat3.gl3_order(q), str(len(G[0])))
    for f in irreducible_cubics(F):
        chk.run(f"stabilizer_{f.a}_{f.b}_{f.c}", lambda f=f: census.verify_stabilizer(q, f, G))
    return chk.results


def centralizer_suite(q: int, seed: int = 0, long: bool = False) -> list[CheckResult]:
    chk = _Checker()
    chk.run("centralizer_trivial_outside_field", lambda: census.verify_centralizer(q))
    return chk.results


def orbits_suite(q: int, seed: int = 0, long: bool = False) -> list[CheckResult]:
    chk = _Checker()
    if q != 2:
        chk.record("orbit_sizes", True, "skipped: explicit orbits only at q=2")
        return chk.results

    def orbits():
        rep = census.verify_orbit_sizes(q)
        ok = rep.ok and rep.vhat_from_orbits == census.chain_counts(q, 2)["V_hat"]
        return ok, (f"sizes={rep.orbit_sizes} |X|={rep.x_size} |X1hat|={rep.x1_hat_size} "
                    f"|Y|={rep.y_size} |union of MRD orbits|={rep.vhat_from_orbits}")

    chk.run("orbit_sizes_and_set_sizes", orbits)
    return chk.results


def reduction_suite(q: int, seed: int = 0, long: bool = False) -> list[CheckResult]:
    chk = _Checker()
    prop = closed_form_proportion(q)
    t_hat = prop * gaussian_binomial(9, 3, q)
    chk.record("t_hat_integral", t_hat.denominator == 1, str(t_hat))
    s = (q**3 - q) // 3 * (q**3 - q**2 - q - 1)
    chk.record("closed_form_equals_reduction", prop == proportion_of_mrd(q, s))
    chain = census.chain_counts(q, s)
    chk.record("chain_v_hat_equals_t_hat", chain["V_hat"] == t_hat)
    if q == 2 or (q == 3 and long):
        chk.run("v_hat_brute", lambda: census.brute_force_Vhat(q) == chain["V_hat"])
    if q == 2:
        chk.run("subspace_oracle", lambda: census.subspace_oracle(q) == (gaussian_binomial(9, 3, q), t_hat))
    return chk.results


def semifield_suite(q: int, seed: int = 0, long: bool = False) -> list[CheckResult]:
    F = build_field(q)
    E = build_extension(F)
    S = census.brute_force_S(q).triples
    views = [SemifieldView(t) for t in S]
    chk = _Checker()

    def zero_divisors():
        if q == 2:
            # every normalized pair (C_f, Z) with Z of shape (0,0,1) in the first column
            tested = 0
            for f in irreducible_cubics(F):
                for rest in itertools.product(F.elements(), repeat=6):
                    Z = (0, rest[0], rest[1], 0, rest[2], rest[3], 1, rest[4], rest[5])
                    v = SemifieldView.from_matrices(F, mat3.companion(f), Z)
                    table = multiplication_table(v)
                    if exhaustive_zero_divisors(table) == is_mrd(v.triple):
                        return False
                    tested += 1
            pairs, bad = all_pairs_zero_divisor_sweep(q)
            return bad == 0, f"{tested} normalized triples, {pairs} matrix pairs"
        return all(not has_zero_divisors(v) for v in views), f"{len(views)} triples of S"

    chk.run("mrd_iff_no_zero_divisors", zero_divisors)

    def criteria():
        if q > 3:
            return all(is_commutative(v) in (True, False) for v in views), "criteria only (q > 3)"
        for v in views:
            table = multiplication_table(v)
            if is_commutative(v) != exhaustive_commutative(table):
                return False
            if is_associative(v) != exhaustive_associative(table):
                return False
        return True

    chk.run("commutativity_and_associativity_criteria", criteria)

    def duals():
        for v in views:
            w = dual_triple(v)
            if dual_triple(w) != v or not is_mrd(w.triple):
                return False
            if right_multiplication_matrices(v) != (w.cf, w.z):
                return False
        return True

    chk.run("dual_triple_mrd_and_involutive", duals)

    def structure():
        if q == 2:
            xs = list(itertools.product(E.elements(), repeat=3))
        else:
            rng = random.Random(seed)
            xs = [tuple(rng.randrange(E.size) for _ in range(3)) for _ in range(200)]
        return all(structure_identity_check(v, E, x) for v in views for x in xs), f"{len(xs)} points per triple"

    chk.run("structure_matrix_identity", structure)

    def identity_element():
        vecs = list(itertools.product(F.elements(), repeat=3))
        return all(
            multiply(v, (1, 0, 0), y) == tuple(y) and multiply(v, y, (1, 0, 0)) == tuple(y)
            for v in views
            for y in vecs
        )

    chk.run("e1_is_identity", identity_element)

    def classes():
        counts = {k.value: 0 for k in Kind}
        for v in views:
            counts[classify(v).value] += 1
        return counts == census.expected_class_counts(q), str(counts)

    chk.run("class_counts", classes)
    return chk.results


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "sigma": sigma_suite,
    "phi": phi_suite,
    "parametrization": parametrization_suite,
    "stabilizer": stabilizer_suite,
    "centralizer": centralizer_suite,
    "orbits": orbits_suite,
    "reduction": reduction_suite,
    "semifield": semifield_suite,
}

# suites that sweep GL_3(q) or q^9 matrices stay at q <= 3
MAX_Q = {"stabilizer": 3, "centralizer": 3, "orbits": 3, "reduction": 9, "semifield": 5}


def run_suite(name: str, q: int, seed: int = 0, long: bool = False) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(name)
    limit = MAX_Q.get(name, 9)
    if q > limit:
        return [CheckResult(f"{name}_q{q}", False, 0.0, f"suite {name} supports q <= {limit}")]
    return SUITES[name](q, seed=seed, long=long)
