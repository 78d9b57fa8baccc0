"""Post-quench qubit coherence.

The dynamical overlap ⟨0|U_↑(t)|0⟩_↓ = Σ w_n e^{−i·2n·φ}, φ = ω_↑t, depends on
the table only through the renormalized weights w_n = |c_2n|²/Σ|c_2k|².
1 − Re O is accumulated as Σ 2w_n sin²(nφ) so values near a recurrence keep
full relative precision.
"""
import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

CHUNK = 2048


def phase_sums(table, phis):
    """(Σ w sin²(nφ), Σ w sin(2nφ)) for an array of phases, chunked."""
    w = table.weights
    n = table.pair_index.astype(float)
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    half_gap = np.empty(phis.shape)
    quad = np.empty(phis.shape)
    flat_phis = phis.ravel()
    flat_gap = half_gap.ravel()
    flat_quad = quad.ravel()
    for start in range(0, flat_phis.size, CHUNK):
        block = np.outer(flat_phis[start:start + CHUNK], n)
        flat_gap[start:start + CHUNK] = np.sin(block) ** 2 @ w
        flat_quad[start:start + CHUNK] = np.sin(2.0 * block) @ w
    return half_gap, quad


def phase_overlap(table, phis):
    """Overlap as a function of φ; returns (overlap, 1 − Re overlap)."""
    half_gap, quad = phase_sums(table, phis)
    deficit = 2.0 * half_gap
    return (1.0 - deficit) - 1j * quad, deficit


def loschmidt_overlap(table, omega_up, t):
    """Dynamical overlap of the initial state with its ↑-evolved copy."""
    if np.any(np.asarray(t) < 0):
        raise ValueError("times must be non-negative")
    overlap, _ = phase_overlap(table, omega_up * np.asarray(t, dtype=float))
    if np.ndim(t) == 0:
        return complex(overlap[0])
    return overlap


def bures_from_overlap(overlap, deficit):
    """Θ = arccos|O| evaluated through 1 − |O|² without cancellation."""
    im = np.imag(overlap)
    one_minus_sq = np.clip(deficit * (2.0 - deficit) - im * im, 0.0, 1.0)
    modulus = np.sqrt(np.clip(1.0 - one_minus_sq, 0.0, 1.0))
    return np.arctan2(np.sqrt(one_minus_sq), modulus)


@dataclass(frozen=True, eq=False)
class CoherenceTrace:
    times: np.ndarray
    overlap: np.ndarray
    sigma_x: np.ndarray
    bures: np.ndarray
    omega_up: float

    @property
    def phis(self):
        return self.omega_up * self.times

    @property
    def p_plus(self):
        return 0.5 * (1.0 + self.sigma_x)

    @property
    def coherence_abs(self):
        """|⟨σ_+⟩_t| = cos Θ(t) / 2."""
        return 0.5 * np.cos(self.bures)


def _check_time_grid(times):
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise ValueError("times must be non-negative")
    steps = np.diff(times)
    if steps.size and not (np.all(steps > 0) or np.all(steps < 0)):
        raise ValueError("time grid must be strictly monotone")
    return times


def sigma_x_trace(table, omega_up, times):
    times = _check_time_grid(times)
    overlap, deficit = phase_overlap(table, omega_up * times)
    return CoherenceTrace(
        times=times,
        overlap=overlap,
        sigma_x=1.0 - deficit,
        bures=bures_from_overlap(overlap, deficit),
        omega_up=float(omega_up),
    )


def dephasing_envelope(t, T2star):
    if T2star <= 0:
        raise ValueError(f"T2star must be positive, got {T2star}")
    return np.exp(-(np.asarray(t, dtype=float) / T2star) ** 2)


def dephased_sigma_x(table, omega_up, t, T2star):
    """Quasistatic-noise average e^{−(t/T2*)²} Re⟨0|U_↑(t)|0⟩."""
    envelope = dephasing_envelope(t, T2star)
    _, deficit = phase_overlap(table, omega_up * np.asarray(t, dtype=float))
    value = envelope * (1.0 - deficit)
    if np.ndim(t) == 0:
        return float(value[0])
    return value


def quasistatic_average(table, omega_up, t, T2star, samples, seed):
    """Monte Carlo average of Re(e^{iηt} O) over η ~ N(0, 2/T2*²).

    Returns (mean, standard error). Oracle for `dephased_sigma_x`.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    eta = rng.normal(0.0, np.sqrt(2.0) / T2star, size=samples)
    overlap = loschmidt_overlap(table, omega_up, float(t))
    values = np.real(np.exp(1j * eta * t) * overlap)
    return float(values.mean()), float(values.std(ddof=1) / np.sqrt(samples))
