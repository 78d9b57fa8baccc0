"""Maximum-likelihood estimation of φ = ω_↑T and Monte Carlo studies of it."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from inference.fisher import fisher_information
from inference.measurement import minus_probability
from inference.sampling import derive_seed, sample_outcomes
from utils.errors import DegenerateLikelihood
from utils.sim_config import setting

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0
HALF_PI = math.pi / 2.0


@dataclass(frozen=True, eq=False)
class EstimatorStudy:
    phi_true: float
    M: int
    batches: int
    estimates: np.ndarray
    empirical_mean: float
    empirical_variance: float
    crlb: float
    window: tuple
    seed: int
    skewness: float
    excess_kurtosis: float
    sql_variance: float
    heisenberg_variance: float
    extra: dict = field(default_factory=dict)

    @property
    def variance_ratio(self):
        return self.empirical_variance / self.crlb

    @property
    def bias(self):
        return self.empirical_mean - self.phi_true

    @property
    def bias_standard_error(self):
        return math.sqrt(self.empirical_variance / self.batches)

    def summary(self):
        return {
            "phi_true": self.phi_true,
            "shots": self.M,
            "batches": self.batches,
            "window_lo": self.window[0],
            "window_hi": self.window[1],
            "mean_estimate": self.empirical_mean,
            "bias": self.bias,
            "bias_standard_error": self.bias_standard_error,
            "empirical_variance": self.empirical_variance,
            "crlb": self.crlb,
            "variance_ratio": self.variance_ratio,
            "skewness": self.skewness,
            "excess_kurtosis": self.excess_kurtosis,
            "sql_variance": self.sql_variance,
            "heisenberg_variance": self.heisenberg_variance,
        }


def log_likelihood_counts(n_plus, n_minus, table, phi, floor=None):
    """N₊ ln p(+|φ) + N₋ ln p(−|φ), probabilities floored."""
    floor = setting("simulation", "probability_floor", floor)
    p_minus = np.atleast_1d(minus_probability(table, phi))
    p_plus = 1.0 - p_minus
    value = np.zeros(p_minus.shape)
    if n_plus:
        value = value + n_plus * np.log(np.maximum(p_plus, floor))
    if n_minus:
        value = value + n_minus * np.log(np.maximum(p_minus, floor))
    if np.ndim(phi) == 0:
        return float(value[0])
    return value


def log_likelihood(record, table, phi, floor=None):
    """Log-likelihood of a record; depends on the outcome counts only."""
    return log_likelihood_counts(record.n_plus, record.n_minus, table, phi, floor)


def check_window(window):
    """The window must sit inside one quarter period [kπ/2, (k+1)π/2]."""
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError(f"window must satisfy lo < hi, got {window}")
    k = math.floor(lo / HALF_PI + 1e-12)
    if hi > (k + 1) * HALF_PI + 1e-12:
        raise ValueError(
            f"window {window} spans a symmetry point of p(+|phi); "
            "restrict it to a half-period next to a single recurrence"
        )
    return lo, hi


def golden_section_max(objective, a, b, iters):
    """Golden-section search for the maximum of `objective` on [a, b]."""
    dist = b - a
    c = a + INV_PHI_SQ * dist
    d = a + INV_PHI * dist
    fc = objective(c)
    fd = objective(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            dist = INV_PHI * dist
            c = a + INV_PHI_SQ * dist
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            fd = objective(d)
    return (a + d) / 2.0 if fc > fd else (c + b) / 2.0


def mle_from_counts(n_plus, n_minus, table, window, grid_points=None,
                    refine_iters=None, flat_tolerance=None):
    """Grid argmax of the log-likelihood refined by golden-section search."""
    grid_points = setting("mle", "grid_points", grid_points)
    refine_iters = setting("mle", "refine_iters", refine_iters)
    flat_tolerance = setting("mle", "flat_tolerance", flat_tolerance)
    if grid_points < 100:
        raise ValueError(f"grid_points must be >= 100, got {grid_points}")
    lo, hi = check_window(window)

    grid = np.linspace(lo, hi, grid_points)
    values = log_likelihood_counts(n_plus, n_minus, table, grid)
    best = float(values.max())
    span = best - float(values.min())
    if span <= flat_tolerance * max(1.0, abs(best)):
        raise DegenerateLikelihood(span, (lo, hi))

    # ties go to the grid point nearest the window center
    tied = np.flatnonzero(values == best)
    center = 0.5 * (lo + hi)
    k = int(tied[np.argmin(np.abs(grid[tied] - center))])
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, grid_points - 1)]

    def objective(phi):
        return log_likelihood_counts(n_plus, n_minus, table, phi)

    estimate = golden_section_max(objective, a, b, refine_iters)
    # the refined point must not lose to the grid winner
    if objective(estimate) < best:
        estimate = float(grid[k])
    return float(estimate)


def mle_estimate(record, table, window, grid_points=None, refine_iters=None):
    return mle_from_counts(record.n_plus, record.n_minus, table, window,
                           grid_points, refine_iters)


def _batch_estimate(table, phi_true, M, seed, window, batch, grid_points, refine_iters):
    record = sample_outcomes(table, phi_true, M, derive_seed(seed, batch))
    return mle_estimate(record, table, window, grid_points, refine_iters)


def estimator_study(table, phi_true, M, batches, seed, window, grid_points=None,
                    refine_iters=None, workers=None):
    """MLE spread over independent seeded batches, compared with the CRLB."""
    workers = setting("run", "workers", workers)
    if batches < 30:
        raise ValueError(f"batches must be >= 30, got {batches}")
    window = check_window(window)
    logger.info("MLE study: r=%.4g phi=%.6g M=%d batches=%d workers=%d",
                table.r, phi_true, M, batches, workers)

    def run(batch):
        return _batch_estimate(table, phi_true, M, seed, window, batch,
                               grid_points, refine_iters)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            estimates = np.array(list(pool.map(run, range(batches))))
    else:
        estimates = np.array([run(batch) for batch in range(batches)])

    n_bar = math.sinh(table.r) ** 2
    fisher = fisher_information(table, phi_true)
    crlb = 1.0 / (M * fisher) if fisher > 0 else math.inf
    return EstimatorStudy(
        phi_true=float(phi_true),
        M=int(M),
        batches=int(batches),
        estimates=estimates,
        empirical_mean=float(estimates.mean()),
        empirical_variance=float(estimates.var(ddof=1)),
        crlb=crlb,
        window=window,
        seed=int(seed),
        skewness=float(stats.skew(estimates)),
        excess_kurtosis=float(stats.kurtosis(estimates)),
        sql_variance=1.0 / (M * n_bar) if n_bar > 0 else math.inf,
        heisenberg_variance=1.0 / (M * n_bar ** 2) if n_bar > 0 else math.inf,
        extra={"fisher_at_truth": fisher, "n_bar": n_bar, "r": table.r},
    )


def phase_to_frequency(phi_hat, delta_phi, T):
    """(ω̂, δω) = (φ̂/T, δφ/T) for an exactly known evolution time T."""
    if T <= 0:
        raise ValueError(f"T must be positive, got {T}")
    return phi_hat / T, delta_phi / T
