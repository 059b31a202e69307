import math

import numpy as np
import pytest

from colsel import (
    DomainError,
    check_inf1_reduction,
    check_inf2_reduction,
    hollow_gram,
    norm_inf1_exact,
    norm_inf2_exact,
    poissonization_check,
    sample_projector,
    standardize,
)

DOUBLE_ID = standardize(np.hstack([np.eye(8), np.eye(8)]))


def rng_from(seed):
    return np.random.default_rng(seed)


def test_sample_projector_extremes():
    for model in ("P", "R"):
        assert np.array_equal(sample_projector(model, 6, 1.0, rng_from(0)), np.arange(6))
    assert sample_projector("P", 6, 0.0, rng_from(0)).size == 0
    assert sample_projector("R", 6, 0.0, rng_from(0)).size == 0


def test_sample_projector_cardinalities():
    # P model is exact; R model is binomial
    rng = rng_from(1)
    sizes = [sample_projector("P", 10, 0.3, rng).size for _ in range(50)]
    assert all(s == 3 for s in sizes)

    n, delta, draws = 1000, 0.3, 200
    sizes = np.array([sample_projector("R", n, delta, rng).size for _ in range(draws)])
    sigma_mean = math.sqrt(n * delta * (1 - delta) / draws)
    assert abs(sizes.mean() - n * delta) <= 5 * sigma_mean


def test_sample_projector_validation():
    with pytest.raises(DomainError):
        sample_projector("P", 4, 1.5, rng_from(0))
    with pytest.raises(DomainError):
        sample_projector("Q", 4, 0.5, rng_from(0))


def test_inf2_delta_zero():
    r_res, p_res = check_inf2_reduction(DOUBLE_ID, 0.0, 100, seed=0)
    assert r_res.empirical_mean == 0.0
    assert p_res.empirical_mean == 0.0
    assert r_res.passed and p_res.passed


def test_inf2_delta_one_is_equality():
    r_res, p_res = check_inf2_reduction(DOUBLE_ID, 1.0, 100, seed=0)
    exact, _ = norm_inf2_exact(DOUBLE_ID)
    assert r_res.empirical_mean == pytest.approx(exact, rel=1e-12)
    assert r_res.theoretical_bound == pytest.approx(exact, rel=1e-12)
    assert r_res.std_error <= 1e-14
    assert r_res.passed and p_res.passed


def test_inf2_double_identity_passes_bounds():
    r_res, p_res = check_inf2_reduction(DOUBLE_ID, 0.5, 500, seed=42)
    assert r_res.passed
    assert p_res.passed
    # regime check: s = 8 <= ceil(2 * st.rank) = 16, so the 7 sqrt(s) bound applies
    assert p_res.theoretical_bound == pytest.approx(7 * math.sqrt(8))
    ok, lhs, rhs = poissonization_check(p_res, r_res)
    assert ok and lhs <= rhs


def test_inf1_orthonormal_columns_are_silent():
    res = check_inf1_reduction(np.eye(12), 0.25, 100, seed=0, regime=True)
    assert res.empirical_mean == 0.0
    assert res.passed


def test_inf1_delta_zero():
    res = check_inf1_reduction(DOUBLE_ID, 0.0, 100, seed=0, regime=True)
    assert res.empirical_mean == 0.0
    assert res.passed


def test_inf1_double_identity_small_regime():
    res = check_inf1_reduction(DOUBLE_ID, 2 / 16, 500, seed=7, regime=True)
    assert res.theoretical_bound == pytest.approx(2 / 9)
    assert res.passed


def test_inf1_informational_row_records_fitted_constant():
    a = standardize(rng_from(3).standard_normal((10, 16)))
    res = check_inf1_reduction(a, 0.25, 200, seed=5)
    assert res.passed  # informational rows never fail
    assert res.fitted_constant is not None
    assert res.fitted_constant > 0


def test_monotonicity_of_norms_under_sampling():
    rng = rng_from(4)
    a = standardize(rng.standard_normal((6, 10)))
    h = hollow_gram(a)
    inner = np.array([1, 4, 7])
    outer = np.array([1, 2, 4, 7, 9])
    assert norm_inf2_exact(a[:, inner])[0] <= norm_inf2_exact(a[:, outer])[0] + 1e-12
    assert (
        norm_inf1_exact(h[np.ix_(inner, inner)])[0]
        <= norm_inf1_exact(h[np.ix_(outer, outer)])[0] + 1e-12
    )


def test_poissonization_on_inf1():
    # E_P <= 2 E_R with a 3 sigma cushion, checked directly via the oracles
    rng = rng_from(8)
    h = hollow_gram(DOUBLE_ID)
    n = 16
    p_vals, r_vals = [], []
    for _ in range(400):
        idx = sample_projector("P", n, 0.25, rng)
        p_vals.append(norm_inf1_exact(h[np.ix_(idx, idx)])[0])
        idx = sample_projector("R", n, 0.25, rng)
        r_vals.append(norm_inf1_exact(h[np.ix_(idx, idx)])[0])
    p_vals, r_vals = np.array(p_vals), np.array(r_vals)
    se = math.sqrt(
        (p_vals.std(ddof=1) ** 2 + 4 * r_vals.std(ddof=1) ** 2) / 400
    )
    assert p_vals.mean() <= 2 * r_vals.mean() + 3 * se


def test_experiment_determinism():
    a = standardize(rng_from(9).standard_normal((6, 12)))
    first = check_inf2_reduction(a, 0.4, 150, seed=11)
    second = check_inf2_reduction(a, 0.4, 150, seed=11)
    assert first == second


def test_experiment_validation():
    with pytest.raises(DomainError, match="trials"):
        check_inf2_reduction(DOUBLE_ID, 0.5, 10, seed=0)
    wide = standardize(np.hstack([np.eye(12), np.eye(12)]))
    with pytest.raises(DomainError, match="capped"):
        check_inf2_reduction(wide, 0.5, 100, seed=0)
