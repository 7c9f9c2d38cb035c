"""Superoperator conventions, Choi classification, isometry decomposition,
and the implementability route."""

import math

import numpy as np
import pytest

from nclp.sampling import commuting_unitary, ginibre, random_density, random_unitary, rng_from
from nclp.spaces import P_GRID, QuantumMeasure, maximally_mixed
from nclp.superop import (
    KIND_ANTI,
    KIND_ISO,
    NotClassifiableError,
    NotDecomposableError,
    NotJordanError,
    SuperOperator,
    canonical_jordan,
    change_of_representation_demo,
    choi,
    choi_rank,
    fix_global_phase,
    implementability_check,
    isometry_check,
    jordan_check,
    jordan_classify,
    lamperti_decompose,
    phase_distance,
    positivity_check,
    swap_matrix,
    unvec,
    vec,
    weighted_isometry_transport,
)


def test_vec_is_column_stacking():
    x = np.array([[1.0, 3.0], [2.0, 4.0]])
    assert np.array_equal(vec(x), np.array([1.0, 2.0, 3.0, 4.0]))
    assert np.array_equal(unvec(vec(x)), x)


def test_sandwich_matches_kron_identity():
    rng = rng_from(0)
    a, b, x = ginibre(3, rng), ginibre(3, rng), ginibre(3, rng)
    t = SuperOperator.sandwich(a, b)
    assert np.allclose(t.apply(x), a @ x @ b)
    assert np.allclose(t.matrix, np.kron(b.T, a))


def test_ad_unitary_matrix_convention():
    u = random_unitary(2, rng_from(1))
    assert np.allclose(SuperOperator.ad_unitary(u).matrix, np.kron(u.conj(), u))


def test_transpose_map_and_swap():
    x = ginibre(3, rng_from(2))
    t = SuperOperator.transpose_map(3)
    assert np.allclose(t.apply(x), x.T)
    s = swap_matrix(3)
    assert np.allclose(s @ s, np.eye(9))


def test_adjoint_pairs_with_trace():
    rng = rng_from(3)
    t = SuperOperator(3, ginibre(9, rng))
    adj = t.adjoint()
    for _ in range(10):
        x, y = ginibre(3, rng), ginibre(3, rng)
        lhs = np.trace(t.apply(x).conj().T @ y)
        rhs = np.trace(x.conj().T @ adj.apply(y))
        assert abs(lhs - rhs) < 1e-10


def test_predual_pairs_with_states():
    rng = rng_from(4)
    t = SuperOperator(3, ginibre(9, rng))
    pre = t.predual()
    for _ in range(10):
        rho, a = ginibre(3, rng), ginibre(3, rng)
        lhs = np.trace(pre.apply(rho) @ a)
        rhs = np.trace(rho @ t.apply(a))
        assert abs(lhs - rhs) < 1e-10


def test_predual_of_conjugation_is_reverse_rotation():
    u = random_unitary(3, rng_from(5))
    pre = SuperOperator.ad_unitary(u).predual()
    rho = random_density(3, rng_from(6)).matrix
    assert np.allclose(pre.apply(rho), u.conj().T @ rho @ u)


def test_choi_of_identity_is_vectorized_identity_projector():
    t = SuperOperator.identity(2)
    c = choi(t)
    omega = vec(np.eye(2)).reshape(-1, 1)
    assert np.allclose(c, omega @ omega.conj().T)
    assert choi_rank(c) == 1


def test_choi_of_conjugation_has_rank_one():
    u = random_unitary(3, rng_from(7))
    assert choi_rank(choi(SuperOperator.ad_unitary(u))) == 1


def test_choi_of_transpose_is_swap():
    c = choi(SuperOperator.transpose_map(2))
    assert np.allclose(c, swap_matrix(2))
    assert choi_rank(c) == 4


def test_choi_hermitian_iff_star_preserving():
    u = random_unitary(3, rng_from(8))
    hermitian_choi = choi(SuperOperator.ad_unitary(u))
    assert np.linalg.norm(hermitian_choi - hermitian_choi.conj().T) < 1e-12
    # left multiplication by a non-Hermitian matrix is not *-preserving
    skew = SuperOperator.sandwich(ginibre(3, rng_from(9)), np.eye(3))
    c = choi(skew)
    assert np.linalg.norm(c - c.conj().T) > 1e-3


def test_jordan_check_accepts_automorphisms():
    u = random_unitary(3, rng_from(10))
    check = jordan_check(SuperOperator.ad_unitary(u))
    assert check.is_jordan and check.defect <= 1e-10
    check_t = jordan_check(SuperOperator.transpose_map(3))
    assert check_t.is_jordan and check_t.defect <= 1e-10


def test_jordan_check_rejects_trace_bump():
    n = 2

    def bump(x):
        out = x.copy()
        out[0, 0] += np.trace(x)
        return out

    check = jordan_check(SuperOperator.from_apply(n, bump))
    assert not check.is_jordan
    assert check.defect > 0.1


def test_jordan_classify_conjugation():
    u0 = random_unitary(3, rng_from(11))
    cls = jordan_classify(SuperOperator.ad_unitary(u0))
    assert cls.kind == KIND_ISO
    assert phase_distance(cls.unitary, u0) < 1e-10


def test_jordan_classify_transpose():
    cls = jordan_classify(SuperOperator.transpose_map(3))
    assert cls.kind == KIND_ANTI
    assert phase_distance(cls.unitary, np.eye(3)) < 1e-10


def test_jordan_classify_transposed_conjugation_round_trip():
    u0 = random_unitary(4, rng_from(12))
    j = canonical_jordan(KIND_ANTI, u0)
    cls = jordan_classify(j)
    assert cls.kind == KIND_ANTI
    assert phase_distance(cls.unitary, u0) <= 1e-8


def test_jordan_classify_rejects_non_jordan():
    with pytest.raises(NotClassifiableError):
        jordan_classify(SuperOperator(2, ginibre(4, rng_from(13))))


def test_choi_rank_dichotomy():
    rng = rng_from(14)
    for n in (2, 3, 4, 5):
        for kind in (KIND_ISO, KIND_ANTI):
            j = canonical_jordan(kind, random_unitary(n, rng))
            plain = choi_rank(choi(j))
            flipped = choi_rank(choi(j @ SuperOperator.transpose_map(n)))
            assert (plain == 1) != (flipped == 1)


def test_fix_global_phase_pivot_positive():
    u = np.exp(0.7j) * random_unitary(3, rng_from(15))
    fixed = fix_global_phase(u)
    pivot = fixed.flat[np.argmax(np.abs(fixed))]
    assert abs(pivot.imag) < 1e-12 and pivot.real > 0


def test_positivity_check_accepts_and_rejects():
    n = 3
    u = random_unitary(n, rng_from(16))
    good = positivity_check(SuperOperator.ad_unitary(u))
    assert good.positive
    bad = positivity_check(SuperOperator.identity(n).scaled(-1.0))
    assert not bad.positive and bad.defect > 0.1
    # transposition is positive but not completely positive
    t = positivity_check(SuperOperator.transpose_map(2))
    assert t.positive and t.choi_min_eigenvalue < -0.5


def test_isometry_check_unitary_conjugation_all_p():
    u = random_unitary(3, rng_from(17))
    t = SuperOperator.ad_unitary(u)
    for p in P_GRID + (math.inf,):
        check = isometry_check(t, None, p, trials=20, seed=1)
        assert check.is_isometry and check.onto


def test_isometry_check_projection_is_not_onto():
    n = 2
    e = np.diag([1.0, 0.0]).astype(complex)
    t = SuperOperator.from_apply(n, lambda x: e @ x @ e)
    check = isometry_check(t, None, 2.0, trials=10, seed=2)
    assert not check.onto


def test_isometry_check_scaling_defect_one():
    t = SuperOperator.identity(2).scaled(2.0)
    check = isometry_check(t, None, 2.0, trials=10, seed=3)
    assert not check.is_isometry
    assert abs(check.max_rel_defect - 1.0) < 1e-12
    assert check.gram_defect is not None and check.gram_defect > 1.0


def test_isometry_check_weighted_commuting_conjugation():
    rng = rng_from(18)
    m = QuantumMeasure(random_density(3, rng))
    u = commuting_unitary(m.eigenbasis, rng)
    t = SuperOperator.ad_unitary(u)
    for p in (1.0, 2.0, 3.0):
        check = isometry_check(t, m, p, trials=20, seed=4)
        assert check.is_isometry and check.onto


def test_lamperti_decompose_conjugation():
    u0 = random_unitary(3, rng_from(19))
    dec = lamperti_decompose(SuperOperator.ad_unitary(u0), 2.0)
    assert dec.kind == KIND_ISO
    assert abs(dec.scale - 1.0) < 1e-9
    assert phase_distance(dec.w, np.eye(3)) < 1e-8
    assert phase_distance(dec.implementing_unitary, u0) < 1e-8
    assert dec.residual < 1e-10


def test_lamperti_decompose_left_unitary_times_transpose():
    w0 = random_unitary(3, rng_from(20))
    t = SuperOperator.sandwich(w0, np.eye(3)) @ SuperOperator.transpose_map(3)
    dec = lamperti_decompose(t, 1.0)
    assert dec.kind == KIND_ANTI
    assert abs(dec.scale - 1.0) < 1e-9
    assert phase_distance(dec.w, w0) < 1e-8
    assert phase_distance(dec.implementing_unitary, np.eye(3)) < 1e-8


def test_lamperti_rejects_scaled_conjugation():
    u0 = random_unitary(2, rng_from(21))
    with pytest.raises(NotDecomposableError):
        lamperti_decompose(SuperOperator.ad_unitary(u0).scaled(2.0), 2.0)


def test_lamperti_rejects_perturbed_isometries():
    rng = rng_from(22)
    for trial in range(20):
        n = 2 + trial % 3
        t = SuperOperator.ad_unitary(random_unitary(n, rng))
        noisy = SuperOperator(n, t.matrix + 1e-3 * ginibre(n * n, rng))
        with pytest.raises(NotDecomposableError):
            lamperti_decompose(noisy, (1.0, 2.0, 3.0)[trial % 3])


def test_lamperti_trace_condition_on_positive_samples():
    rng = rng_from(23)
    u0 = random_unitary(3, rng)
    for p in (1.0, 2.0, 3.0):
        dec = lamperti_decompose(canonical_jordan(KIND_ANTI, u0), p)
        for _ in range(10):
            g = ginibre(3, rng)
            x = g @ g.conj().T
            lhs = np.trace(x)
            rhs = dec.scale**p * np.trace(dec.jordan.apply(x))
            assert abs(lhs - rhs) <= 1e-9 * abs(lhs)


def test_transport_is_identity_for_uniform_state():
    m = maximally_mixed(3)
    v = SuperOperator(3, ginibre(9, rng_from(24)))
    t = weighted_isometry_transport(v, m, 2.0)
    assert np.allclose(t.matrix, v.matrix, atol=1e-12)


def test_transport_of_commuting_conjugation():
    rng = rng_from(25)
    m = QuantumMeasure(random_density(3, rng))
    u = commuting_unitary(m.eigenbasis, rng)
    t = weighted_isometry_transport(SuperOperator.ad_unitary(u), m, 3.0)
    assert np.allclose(t.matrix, SuperOperator.ad_unitary(u).matrix, atol=1e-9)


def test_transport_round_trip():
    rng = rng_from(26)
    m = QuantumMeasure(random_density(3, rng))
    v = SuperOperator(3, ginibre(9, rng))
    for p in (1.0, 2.0, 4.0):
        t = weighted_isometry_transport(v, m, p)
        back = weighted_isometry_transport(t, m, p, inverse=True)
        assert np.linalg.norm(back.matrix - v.matrix) <= 1e-9 * np.linalg.norm(v.matrix)


def test_transport_preserves_isometry_verdicts():
    rng = rng_from(27)
    m = QuantumMeasure(random_density(3, rng))
    cases = [
        SuperOperator.ad_unitary(commuting_unitary(m.eigenbasis, rng)),
        SuperOperator(3, ginibre(9, rng)),
    ]
    for v in cases:
        t = weighted_isometry_transport(v, m, 2.0)
        weighted = isometry_check(v, m, 2.0, trials=20, seed=5)
        tracial = isometry_check(t, None, 2.0, trials=20, seed=5)
        assert weighted.is_isometry == tracial.is_isometry


def test_implementability_commuting_conjugation():
    rng = rng_from(28)
    m = QuantumMeasure(random_density(3, rng))
    u = commuting_unitary(m.eigenbasis, rng)
    report = implementability_check(SuperOperator.ad_unitary(u), m, 2.0)
    assert report.implementable
    assert report.kind == KIND_ISO
    assert report.match_defect < 1e-8
    assert report.jordan is not None


def test_implementability_transpose_at_uniform_state():
    report = implementability_check(SuperOperator.transpose_map(3), maximally_mixed(3), 2.0)
    assert report.implementable
    assert report.kind == KIND_ANTI


def test_implementability_scalar_expectation_not_onto():
    rng = rng_from(29)
    rho = random_density(3, rng).matrix
    v = SuperOperator.from_apply(3, lambda x: np.trace(rho @ x) * np.eye(3))
    report = implementability_check(v, QuantumMeasure(rho), 2.0)
    assert not report.implementable
    assert report.failure == "onto"


def test_implementability_defect_report_is_structured():
    rng = rng_from(30)
    m = maximally_mixed(2)
    v = SuperOperator.ad_unitary(random_unitary(2, rng))
    report = implementability_check(v, m, 2.0)
    defects = report.defects
    assert set(defects) >= {"unitality", "positivity", "isometry"}
    assert all(isinstance(value, float) for value in defects.values())


def test_change_of_representation_identity_and_transpose():
    rng = rng_from(31)
    m = maximally_mixed(3)
    u = random_unitary(3, rng)
    for lam in (SuperOperator.identity(3), SuperOperator.transpose_map(3)):
        report = change_of_representation_demo(u, lam, m, t_steps=3, trials=20, seed=6)
        assert report.all_implementable


def test_change_of_representation_unitary_frame():
    rng = rng_from(32)
    m = maximally_mixed(3)
    u = random_unitary(3, rng)
    w0 = random_unitary(3, rng)
    report = change_of_representation_demo(
        u, SuperOperator.ad_unitary(w0), m, t_steps=3, trials=20, seed=7
    )
    assert report.all_implementable
    # the implementing unitary at each step is W0 U^t W0* up to phase
    for step in report.steps:
        expected = w0 @ np.linalg.matrix_power(u, step.t) @ w0.conj().T
        dec = step.report.decomposition
        assert phase_distance(dec.implementing_unitary, expected) < 1e-8


def test_change_of_representation_rejects_non_jordan_frame():
    m = maximally_mixed(2)
    u = random_unitary(2, rng_from(33))
    with pytest.raises(NotJordanError):
        change_of_representation_demo(u, SuperOperator.identity(2).scaled(2.0), m, 2)
