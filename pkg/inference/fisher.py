"""Classical Fisher information of the binary qubit readout."""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from inference.measurement import (
    dephased_probabilities,
    minus_probability,
    success_probability_derivative,
)
from states.squeezed_vacuum import squeezed_vacuum
from utils.sim_config import setting

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FisherProfile:
    phis: np.ndarray
    values: np.ndarray
    r: float
    n_bar: float
    K: Optional[float] = None
    m: Optional[int] = None


def _at_recurrence(phis):
    nearest = np.pi * np.round(phis / np.pi)
    return np.abs(phis - nearest) <= 8.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(phis))


def _binary_fisher(phis, p_plus, p_minus, dp, floor):
    # zero at the removable 0/0 at mπ; elsewhere the floor only replaces p == 0
    deterministic = ((dp == 0) | _at_recurrence(phis)) & ((p_plus <= floor) | (p_minus <= floor))
    p_plus = np.where(p_plus > 0, p_plus, floor)
    p_minus = np.where(p_minus > 0, p_minus, floor)
    values = dp * dp * (1.0 / p_plus + 1.0 / p_minus)
    return np.where(deterministic, 0.0, values)


def fisher_information(table, phi, omega_up=None, T2star=None, floor=None):
    """F_C(φ) = Σ_x p(x|φ)[∂_φ ln p(x|φ)]²; dephased when T2star is given."""
    floor = setting("simulation", "probability_floor", floor)
    phis = np.atleast_1d(np.asarray(phi, dtype=float))
    if T2star is None:
        p_minus = np.atleast_1d(minus_probability(table, phis))
        p_plus = 1.0 - p_minus
        dp = np.atleast_1d(success_probability_derivative(table, phis))
    else:
        if omega_up is None:
            raise ValueError("dephased Fisher information needs omega_up")
        p_plus, p_minus, dp = dephased_probabilities(table, phis, omega_up, T2star)
    values = _binary_fisher(phis, p_plus, p_minus, dp, floor)
    if np.ndim(phi) == 0:
        return float(values[0])
    return values


def fisher_profile(table, phis, omega_up=None, T2star=None, m=None):
    """Tabulated F_C over a φ grid, with the dephasing constant K if any."""
    phis = np.asarray(phis, dtype=float)
    n_bar = math.sinh(table.r) ** 2
    K = None
    if T2star is not None:
        K = math.pi / (omega_up * T2star)
    return FisherProfile(
        phis=phis,
        values=np.atleast_1d(fisher_information(table, phis, omega_up, T2star)),
        r=table.r,
        n_bar=n_bar,
        K=K,
        m=m,
    )


def fisher_asymptote(n_bar):
    """3n̄² + 2n̄, the plateau next to each recurrence."""
    if n_bar < 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar}")
    return 3.0 * n_bar ** 2 + 2.0 * n_bar


def dephasing_constant(omega_up, T2star):
    """K = π/(ω_↑T2*)."""
    if T2star <= 0:
        raise ValueError(f"T2star must be positive, got {T2star}")
    return math.pi / (omega_up * T2star)


def dephased_fisher_peak(n_bar, omega_up, T2star, m):
    """e^{−(Km)²}(3n̄² + 2n̄) for the m-th recurrence."""
    if m < 0 or int(m) != m:
        raise ValueError(f"m must be a non-negative integer, got {m}")
    K = dephasing_constant(omega_up, T2star)
    return math.exp(-(K * m) ** 2) * fisher_asymptote(n_bar)


def plateau_offset(n_bar):
    """Offset ε = 10⁻³/max(n̄, 1) used to probe the plateau next to mπ."""
    return 1e-3 / max(n_bar, 1.0)


def heisenberg_exponent(r_values, m=1, tail_tol=None):
    """Log-log slope of F_C(mπ+ε) − 2n̄ against n̄.

    Returns (slope, rows) where rows hold (r, n_bar, peak) per r.
    """
    rows = []
    for r in r_values:
        table = squeezed_vacuum(r, tail_tol=tail_tol)
        n_bar = math.sinh(r) ** 2
        peak = fisher_information(table, m * math.pi + plateau_offset(n_bar))
        rows.append((float(r), n_bar, peak))
    n_bars = np.array([row[1] for row in rows])
    peaks = np.array([row[2] for row in rows])
    slope, _ = np.polyfit(np.log(n_bars), np.log(peaks - 2.0 * n_bars), 1)
    logger.info("Heisenberg exponent over r=%s: %.4f", list(r_values), slope)
    return float(slope), rows
