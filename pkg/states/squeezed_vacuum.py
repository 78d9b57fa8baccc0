"""Even-Fock expansion of the post-quench squeezed vacuum.

Amplitudes follow c_2n = (cosh r)^(-1/2) (−e^{iθ} tanh r)^n √((2n)!)/(2^n n!),
built by a multiplicative recurrence so no factorial is ever formed.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from utils.errors import TruncationOverflow
from utils.sim_config import setting

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    r: float
    theta: float
    n_max: int
    amps: np.ndarray  # c_0, c_2, ..., c_{n_max}
    tail_mass: float
    tail_tol: Optional[float] = None

    @property
    def pair_index(self):
        """n for each retained amplitude c_2n."""
        return np.arange(self.amps.size)

    @property
    def fock_index(self):
        return 2 * self.pair_index

    @property
    def probabilities(self):
        return np.abs(self.amps) ** 2

    @property
    def weights(self):
        """|c_2n|² renormalized to unit mass over the retained levels."""
        p = self.probabilities
        return p / p.sum()

    def full_amplitudes(self):
        """Amplitudes on every Fock level 0..n_max, odd levels zero."""
        out = np.zeros(self.n_max + 1, dtype=complex)
        out[::2] = self.amps
        return out


def _pair_ratio(r, n):
    # |c_{2n+2}/c_{2n}|² = tanh²r · (2n+1)/(2n+2)
    return math.tanh(r) ** 2 * (2 * n + 1) / (2 * n + 2)


def choose_truncation(r, tail_tol=None, cap=None):
    """Smallest even n_max whose discarded |c_2n|² mass is below tail_tol."""
    tail_tol = setting("simulation", "tail_tol", tail_tol)
    cap = setting("simulation", "truncation_cap", cap)
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    if not 0 < tail_tol < 1:
        raise ValueError(f"tail_tol must lie in (0, 1), got {tail_tol}")

    p = 1.0 / math.cosh(r)
    total = p
    n = 0
    while total <= 1.0 - tail_tol:
        p *= _pair_ratio(r, n)
        n += 1
        if 2 * n > cap:
            raise TruncationOverflow(r, tail_tol, cap)
        total += p
    logger.debug("r=%.6g tail_tol=%.3g -> n_max=%d", r, tail_tol, 2 * n)
    return 2 * n


def squeeze_coefficients(r, theta, n_max):
    """Closed-form amplitudes ⟨2n|S(re^{iθ})|0⟩ for 2n ≤ n_max."""
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    if n_max < 0 or n_max % 2:
        raise ValueError(f"n_max must be a non-negative even integer, got {n_max}")

    n = np.arange(n_max // 2)
    step = -np.exp(1j * theta) * math.tanh(r)
    ratios = step * np.sqrt((2 * n + 1) * (2 * n + 2)) / (2 * n + 2)
    amps = np.empty(n_max // 2 + 1, dtype=complex)
    amps[0] = 1.0
    amps[1:] = np.cumprod(ratios)
    amps *= math.cosh(r) ** -0.5

    tail_mass = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    return CoefficientTable(r=float(r), theta=float(theta), n_max=int(n_max),
                            amps=amps, tail_mass=tail_mass)


def squeezed_vacuum(r, theta=0.0, tail_tol=None):
    """Table truncated by `choose_truncation` at the configured tolerance."""
    tail_tol = setting("simulation", "tail_tol", tail_tol)
    table = squeeze_coefficients(r, theta, choose_truncation(r, tail_tol))
    return CoefficientTable(r=table.r, theta=table.theta, n_max=table.n_max,
                            amps=table.amps, tail_mass=table.tail_mass,
                            tail_tol=tail_tol)


def occupation_moments(table):
    """(⟨N⟩, ⟨N²⟩, Var N) of the retained distribution."""
    k = table.fock_index.astype(float)
    p = table.probabilities
    mean = float(np.dot(k, p))
    second = float(np.dot(k * k, p))
    return mean, second, second - mean * mean


def pair_moment(table):
    """⟨m²⟩ = Σ c̄_k c_{k+2} √((k+1)(k+2)); equals −e^{iθ} sinh r cosh r."""
    k = table.fock_index[:-1].astype(float)
    return complex(np.sum(np.conj(table.amps[:-1]) * table.amps[1:]
                          * np.sqrt((k + 1) * (k + 2))))


def parity_sum(table):
    """Σ |c_2n|² (−1)^n; closed form 1/(cosh r √(1+tanh²r))."""
    signs = np.where(table.pair_index % 2 == 0, 1.0, -1.0)
    return float(np.dot(signs, table.probabilities))
