import logging

import numpy as np

from states.squeezed_vacuum import occupation_moments

logger = logging.getLogger(__name__)

QSL_TOLERANCE = 1e-8


def quantum_fisher(omega_up, n_bar):
    """F_Q = 4 Var(H_↑) = 8 ω_↑² (n̄² + n̄), with respect to time."""
    if n_bar < 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar}")
    return 8.0 * omega_up ** 2 * (n_bar ** 2 + n_bar)


def variance_crosscheck(table, omega_up):
    """4 ω_↑² Var(N) from the truncated distribution."""
    _, _, variance = occupation_moments(table)
    return 4.0 * omega_up ** 2 * variance


def qsl_bound(times, F_Q):
    """Bures-angle ceiling t·√F_Q/2 (constant speed for Hamiltonian evolution)."""
    return np.asarray(times, dtype=float) * np.sqrt(F_Q) / 2.0


def qsl_margins(trace, F_Q):
    return qsl_bound(trace.times, F_Q) - trace.bures


def qsl_margin(trace, F_Q):
    """Minimum of t·√F_Q/2 − Θ(t) over the trace grid."""
    margin = float(np.min(qsl_margins(trace, F_Q))) if trace.times.size else 0.0
    if margin < -QSL_TOLERANCE:
        logger.warning("Bures angle exceeds the quantum speed limit by %.3g", -margin)
    return margin
