import logging
import math

import numpy as np
import pytest

from dynamics.coherence import (
    dephased_sigma_x,
    loschmidt_overlap,
    quasistatic_average,
    sigma_x_trace,
)
from dynamics.speed_limit import (
    QSL_TOLERANCE,
    qsl_bound,
    qsl_margin,
    quantum_fisher,
    variance_crosscheck,
)
from states.squeezed_vacuum import squeezed_vacuum

OMEGA_UP = 2 * math.pi * 2.8


def test_overlap_normalization(table_r1):
    assert loschmidt_overlap(table_r1, OMEGA_UP, 0.0) == 1 + 0j


@pytest.mark.parametrize("m", [1, 2, 5])
def test_full_recurrence(table_r1, m):
    overlap = loschmidt_overlap(table_r1, OMEGA_UP, m * math.pi / OMEGA_UP)
    assert abs(overlap - 1) <= 10 * table_r1.tail_tol


def test_half_period_overlap_is_the_generating_function(table_r1):
    overlap = loschmidt_overlap(table_r1, 1.0, math.pi / 2)
    # 1 / (cosh r sqrt(1 + tanh^2 r)) = 1 / sqrt(cosh 2r)
    assert overlap.real == pytest.approx(1 / math.sqrt(math.cosh(2.0)), rel=1e-10)
    assert overlap.real == pytest.approx(0.5156, abs=1e-4)
    assert abs(overlap.imag) < 1e-12


@pytest.mark.parametrize("scale", [0.25, 3.0, 40.0])
def test_overlap_depends_on_frequency_times_time(table_r1, scale):
    times = np.linspace(0, 4 * math.pi / OMEGA_UP, 257)
    reference = loschmidt_overlap(table_r1, OMEGA_UP, times)
    rescaled = loschmidt_overlap(table_r1, scale * OMEGA_UP, times / scale)
    np.testing.assert_allclose(rescaled, reference, rtol=0, atol=1e-12)


@pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 2.0])
def test_overlap_modulus_is_bounded(r):
    table = squeezed_vacuum(r)
    overlap = loschmidt_overlap(table, 1.0, np.linspace(0, 2 * math.pi, 4001))
    assert np.all(np.abs(overlap) <= 1 + 1e-12)


def test_negative_time_is_rejected(table_r1):
    with pytest.raises(ValueError):
        loschmidt_overlap(table_r1, 1.0, -0.1)


def test_vacuum_is_stationary(vacuum):
    trace = sigma_x_trace(vacuum, OMEGA_UP, np.linspace(0, 2.0, 101))
    assert np.all(trace.sigma_x == 1.0)
    assert np.all(trace.p_plus == 1.0)
    assert np.all(trace.bures == 0.0)
    assert np.all(trace.coherence_abs == 0.5)


def test_collapse_deepens_with_squeezing():
    times = np.linspace(0, math.pi, 2001)
    minima = [np.min(np.abs(sigma_x_trace(squeezed_vacuum(r), 1.0, times).overlap))
              for r in (0.5, 0.75, 1.0)]
    assert minima[0] > minima[1] > minima[2]


def test_trace_is_periodic(table_r075):
    times = np.linspace(0, math.pi, 301)
    first = sigma_x_trace(table_r075, 1.0, times)
    second = sigma_x_trace(table_r075, 1.0, times + math.pi)
    np.testing.assert_allclose(first.sigma_x, second.sigma_x, atol=1e-12)


def test_trace_rejects_bad_grids(table_r1):
    with pytest.raises(ValueError):
        sigma_x_trace(table_r1, 1.0, [0.0, 0.2, 0.1])
    with pytest.raises(ValueError):
        sigma_x_trace(table_r1, 1.0, [-0.1, 0.0])


def test_dephasing_envelope_examples(vacuum, table_r1):
    assert dephased_sigma_x(vacuum, OMEGA_UP, 100.0, 100.0) == pytest.approx(math.exp(-1), rel=1e-12)
    assert dephased_sigma_x(table_r1, OMEGA_UP, 0.0, 100.0) == 1.0


def test_dephasing_matches_quasistatic_monte_carlo(table_r1):
    T2star = 2.0
    times = np.linspace(0.05, 3.0, 10)
    analytic = dephased_sigma_x(table_r1, OMEGA_UP, times, T2star)
    for i, t in enumerate(times):
        mean, se = quasistatic_average(table_r1, OMEGA_UP, t, T2star, 100_000, seed=1000 + i)
        assert abs(mean - analytic[i]) <= 3 * se + 1e-12


def test_quantum_fisher_examples(table_r1):
    n_bar = math.sinh(1.0) ** 2
    assert quantum_fisher(1.0, n_bar) == pytest.approx(26.308, abs=1e-3)
    assert quantum_fisher(OMEGA_UP, 0.0) == 0.0
    assert variance_crosscheck(table_r1, 1.0) == pytest.approx(quantum_fisher(1.0, n_bar), rel=1e-8)


@pytest.mark.parametrize("r", [0.5, 1.0])
def test_speed_limit_holds_over_a_period(r):
    table = squeezed_vacuum(r)
    times = np.linspace(0, math.pi, 10_001)
    trace = sigma_x_trace(table, 1.0, times)
    F_Q = quantum_fisher(1.0, math.sinh(r) ** 2)
    assert qsl_margin(trace, F_Q) >= -QSL_TOLERANCE
    assert qsl_bound(0.0, F_Q) == 0.0
    assert trace.bures[0] == 0.0


def test_speed_limit_for_vacuum(vacuum):
    trace = sigma_x_trace(vacuum, 1.0, np.linspace(0, 5, 11))
    assert qsl_margin(trace, quantum_fisher(1.0, 0.0)) == 0.0


def test_speed_limit_violation_is_logged(table_r1, caplog):
    trace = sigma_x_trace(table_r1, 1.0, np.linspace(0, 1.0, 11))
    with caplog.at_level(logging.WARNING, logger="dynamics.speed_limit"):
        margin = qsl_margin(trace, 1e-4)
    assert margin < -QSL_TOLERANCE
    assert "quantum speed limit" in caplog.text
