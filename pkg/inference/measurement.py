"""X-basis qubit readout statistics p(±|φ), φ = ω_↑t."""
import numpy as np

from dynamics.coherence import phase_sums


def _scalar_or_array(value, phi):
    if np.ndim(phi) == 0:
        return float(value[0])
    return value


def minus_probability(table, phi):
    """p(−|φ) = Σ w_n sin²(nφ)."""
    half_gap, _ = phase_sums(table, phi)
    return _scalar_or_array(np.clip(half_gap, 0.0, 1.0), phi)


def success_probability(table, phi):
    """p(+|φ) = ½ + ½ Σ w_n cos(2nφ), clamped to [0, 1]."""
    half_gap, _ = phase_sums(table, phi)
    return _scalar_or_array(np.clip(1.0 - half_gap, 0.0, 1.0), phi)


def success_probability_derivative(table, phi):
    """dp(+|φ)/dφ = −Σ w_n n sin(2nφ)."""
    w = table.weights * table.pair_index
    phis = np.atleast_1d(np.asarray(phi, dtype=float))
    value = -(np.sin(2.0 * np.outer(phis.ravel(), table.pair_index)) @ w).reshape(phis.shape)
    return _scalar_or_array(value, phi)


def dephased_probabilities(table, phi, omega_up, T2star):
    """(p(+), p(−), dp(+)/dφ) under quasistatic dephasing at t = φ/ω_↑."""
    phis = np.atleast_1d(np.asarray(phi, dtype=float))
    half_gap, _ = phase_sums(table, phis)
    slope = np.atleast_1d(success_probability_derivative(table, phis))
    scale = 1.0 / (omega_up * T2star)
    envelope = np.exp(-(scale * phis) ** 2)
    coherence = 1.0 - 2.0 * half_gap
    p_plus = 0.5 + 0.5 * envelope * coherence
    p_minus = 0.5 * (1.0 - envelope) + envelope * half_gap
    d_envelope = -2.0 * scale * scale * phis * envelope
    dp = 0.5 * d_envelope * coherence + envelope * slope
    return p_plus, p_minus, dp
