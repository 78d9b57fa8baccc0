import math

import numpy as np
import pytest

from inference.estimator import (
    check_window,
    estimator_study,
    golden_section_max,
    log_likelihood,
    log_likelihood_counts,
    mle_estimate,
    mle_from_counts,
    phase_to_frequency,
)
from inference.fisher import fisher_information
from inference.measurement import minus_probability, success_probability
from inference.sampling import MeasurementRecord, derive_seed, sample_outcomes
from utils.errors import DegenerateLikelihood

PHI_TRUE = math.pi + 0.05
WINDOW = (math.pi, math.pi + math.pi / 2)


def test_vacuum_outcomes_are_all_plus(vacuum):
    for seed in (0, 1, 99):
        record = sample_outcomes(vacuum, 1.234, 500, seed)
        assert record.n_plus == 500
        assert record.n_minus == 0


def test_binomial_statistics(table_r1):
    phi = math.pi / 2
    p = success_probability(table_r1, phi)
    M = 100_000
    record = sample_outcomes(table_r1, phi, M, seed=7)
    sigma = math.sqrt(p * (1 - p) / M)
    assert abs(record.plus_fraction - p) <= 5 * sigma


def test_sampling_is_deterministic(table_r1):
    first = sample_outcomes(table_r1, 2.0, 1000, seed=123)
    second = sample_outcomes(table_r1, 2.0, 1000, seed=123)
    other = sample_outcomes(table_r1, 2.0, 1000, seed=124)
    np.testing.assert_array_equal(first.outcomes, second.outcomes)
    assert not np.array_equal(first.outcomes, other.outcomes)
    assert set(np.unique(first.outcomes)) <= {-1, 1}


def test_derived_seeds():
    assert derive_seed(5, 0) == derive_seed(5, 0)
    seeds = {derive_seed(5, i) for i in range(100)}
    assert len(seeds) == 100
    assert derive_seed(5, 1, 2) != derive_seed(5, 2, 1)


def test_sampling_rejects_empty_record(table_r1):
    with pytest.raises(ValueError):
        sample_outcomes(table_r1, 1.0, 0, seed=1)


def test_log_likelihood_floor(table_r1):
    all_plus = MeasurementRecord(phi_true=0.0, outcomes=np.ones(10, dtype=np.int8), seed=0, M=10)
    assert log_likelihood(all_plus, table_r1, 0.0) == 0.0
    mixed = MeasurementRecord(phi_true=0.0, outcomes=np.array([1, -1, 1, -1], dtype=np.int8), seed=0, M=4)
    assert log_likelihood(mixed, table_r1, 0.0) == pytest.approx(2 * math.log(1e-15))


def test_log_likelihood_depends_on_counts_only(table_r1):
    record = sample_outcomes(table_r1, PHI_TRUE, 200, seed=3)
    shuffled = MeasurementRecord(phi_true=record.phi_true,
                                 outcomes=np.random.default_rng(0).permutation(record.outcomes),
                                 seed=record.seed, M=record.M)
    phis = np.linspace(0.1, 3.0, 25)
    np.testing.assert_array_equal(log_likelihood(record, table_r1, phis),
                                  log_likelihood(shuffled, table_r1, phis))


def test_window_must_avoid_symmetry_points():
    assert check_window(WINDOW) == WINDOW
    with pytest.raises(ValueError):
        check_window((3.0, 3.3))
    with pytest.raises(ValueError):
        check_window((1.0, 0.5))


def test_golden_section_finds_parabola_peak():
    assert golden_section_max(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, 80) == pytest.approx(0.3, abs=1e-9)


def test_flat_likelihood_is_degenerate(vacuum):
    record = sample_outcomes(vacuum, PHI_TRUE, 1000, seed=11)
    with pytest.raises(DegenerateLikelihood) as info:
        mle_estimate(record, vacuum, WINDOW)
    assert info.value.exit_code == 5
    assert info.value.span == 0.0


def test_noiseless_counts_recover_the_phase(table_r1):
    M = 1000
    n_plus = M * success_probability(table_r1, PHI_TRUE)
    n_minus = M * minus_probability(table_r1, PHI_TRUE)
    estimate = mle_from_counts(n_plus, n_minus, table_r1, WINDOW)
    assert estimate == pytest.approx(PHI_TRUE, abs=1e-8)


def test_estimates_fall_within_crlb_band(table_r1):
    M = 1000
    width = 4 / math.sqrt(M * fisher_information(table_r1, PHI_TRUE))
    hits = 0
    for batch in range(200):
        record = sample_outcomes(table_r1, PHI_TRUE, M, derive_seed(2024, batch))
        hits += abs(mle_estimate(record, table_r1, WINDOW) - PHI_TRUE) <= width
    # an all-plus batch pins the estimate to the window edge, ~0.5% of batches
    assert hits >= 196


def test_estimator_matches_crlb(table_r1):
    study = estimator_study(table_r1, PHI_TRUE, 10_000, 500, seed=20240917, window=WINDOW)
    assert study.variance_ratio >= 1 - 3 / math.sqrt(500)
    assert study.variance_ratio <= 1.5
    assert abs(study.bias) <= 3 * study.bias_standard_error
    assert study.estimates.shape == (500,)
    n_bar = math.sinh(1.0) ** 2
    assert study.heisenberg_variance < study.sql_variance
    assert study.crlb < study.sql_variance
    assert study.summary()["batches"] == 500
    assert study.extra["n_bar"] == pytest.approx(n_bar)


def test_estimator_does_not_depend_on_scheduling(table_r1):
    serial = estimator_study(table_r1, PHI_TRUE, 500, 40, seed=5, window=WINDOW, workers=1)
    pooled = estimator_study(table_r1, PHI_TRUE, 500, 40, seed=5, window=WINDOW, workers=4)
    np.testing.assert_array_equal(serial.estimates, pooled.estimates)


def test_estimator_needs_enough_batches(table_r1):
    with pytest.raises(ValueError):
        estimator_study(table_r1, PHI_TRUE, 100, 10, seed=1, window=WINDOW)


def test_phase_to_frequency():
    assert phase_to_frequency(6.0, 0.03, 2.0) == (3.0, 0.015)
    with pytest.raises(ValueError):
        phase_to_frequency(1.0, 0.1, 0.0)


def test_counts_likelihood_is_vectorized(table_r1):
    phis = np.linspace(3.2, 4.0, 7)
    values = log_likelihood_counts(900, 100, table_r1, phis)
    assert values.shape == (7,)
    assert values[0] == pytest.approx(log_likelihood_counts(900, 100, table_r1, float(phis[0])), rel=1e-12)
