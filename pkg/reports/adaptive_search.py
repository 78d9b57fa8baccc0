"""Staged recurrence search with increasing squeezing, then a final MLE.

Each stage probes candidate evolution times t_j = mπ/ω_j for ω_j spread over
the current window of ω_↑. The outcome counts of every stage so far are
scored against a fixed grid of ω_↑ hypotheses; the window shrinks to the
hypotheses whose cumulative log-likelihood is within the detection threshold
of the best one. The last stage's r is then used for a maximum-likelihood
estimate at a time just past the located recurrence. The hidden ω_↑ is held
fixed across stages.
"""
import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
import pandas as pd

from inference.estimator import log_likelihood_counts, mle_estimate
from inference.fisher import fisher_asymptote, fisher_information
from inference.sampling import derive_seed, sample_outcomes
from model.magnet import ghz_to_radns, radns_to_ghz
from states.squeezed_vacuum import squeezed_vacuum
from utils.emitter import ReportResult, build_meta
from utils.errors import FailedLocalization
from utils.sim_config import setting

logger = logging.getLogger(__name__)


@dataclass
class StageRecord:
    stage: int
    r: float
    omega_lo_ghz: float
    omega_hi_ghz: float
    shots_per_candidate: int
    max_plus_fraction: float
    max_plus_omega_ghz: float
    likelihood_span: float
    threshold: float
    detected: bool
    best_omega_ghz: float
    window_lo_ghz: float
    window_hi_ghz: float


@dataclass
class SearchReport:
    stages: list
    r_final: float
    time_ns: float
    phi_true: float
    phi_hat: float
    omega_hat_ghz: float
    delta_omega_ghz: float
    true_omega_ghz: float
    error_ghz: float
    crlb_sigma_true_ghz: float
    total_shots: int


def _probe_offset(n_bar):
    # stay on the informative flank, inside the quarter period
    if n_bar <= 0:
        return math.pi / 4.0
    return min(1.0 / math.sqrt(fisher_asymptote(n_bar)), math.pi / 4.0)


def _stage_log_likelihood(table, records, times, hypotheses):
    total = np.zeros(hypotheses.shape)
    for record, t in zip(records, times):
        total += log_likelihood_counts(record.n_plus, record.n_minus, table, hypotheses * t)
    return total


def _credible_window(hypotheses, loglik, threshold):
    keep = hypotheses[loglik >= loglik.max() - threshold]
    cell = hypotheses[1] - hypotheses[0]
    return (max(hypotheses[0], keep.min() - cell),
            min(hypotheses[-1], keep.max() + cell))


def adaptive_search(stage_r, true_omega_up, shots, seed, prior_omega_up=None,
                    prior_halfwidth=None, candidates=None, recurrence_index=None,
                    detection_sigmas=None, hypotheses=None, tail_tol=None):
    """Run the staged search; frequencies in rad/ns. Raises FailedLocalization."""
    if prior_omega_up is None:
        prior_omega_up = ghz_to_radns(setting("adaptive_search", "prior_omega_up_ghz"))
    prior_halfwidth = setting("adaptive_search", "prior_halfwidth", prior_halfwidth)
    candidates = setting("adaptive_search", "candidates", candidates)
    m = setting("adaptive_search", "recurrence_index", recurrence_index)
    detection_sigmas = setting("adaptive_search", "detection_sigmas", detection_sigmas)
    hypotheses = setting("adaptive_search", "hypotheses", hypotheses)
    if not stage_r:
        raise ValueError("stage_r needs at least one stage")
    if candidates < 2:
        raise ValueError(f"candidates must be >= 2, got {candidates}")

    grid = np.linspace(prior_omega_up * (1.0 - prior_halfwidth),
                       prior_omega_up * (1.0 + prior_halfwidth), hypotheses)
    threshold = 0.5 * detection_sigmas ** 2
    cumulative = np.zeros(grid.shape)
    lo, hi = float(grid[0]), float(grid[-1])
    per_candidate = max(shots // candidates, 1)
    stages = []

    for s, r in enumerate(stage_r):
        table = squeezed_vacuum(r, tail_tol=tail_tol)
        probe_omegas = np.linspace(lo, hi, candidates)
        times = m * math.pi / probe_omegas
        records = [sample_outcomes(table, true_omega_up * t, per_candidate, derive_seed(seed, s, j))
                   for j, t in enumerate(times)]
        loglik = _stage_log_likelihood(table, records, times, grid)
        span = float(loglik.max() - loglik.min())
        detected = span > threshold
        plus_fractions = np.array([record.plus_fraction for record in records])
        cumulative += loglik

        probed = (lo, hi)
        lo, hi = _credible_window(grid, cumulative, threshold)
        best = float(grid[np.argmax(cumulative)])
        stages.append(StageRecord(
            stage=s, r=float(r),
            omega_lo_ghz=radns_to_ghz(probed[0]), omega_hi_ghz=radns_to_ghz(probed[1]),
            shots_per_candidate=per_candidate,
            max_plus_fraction=float(plus_fractions.max()),
            max_plus_omega_ghz=radns_to_ghz(probe_omegas[np.argmax(plus_fractions)]),
            likelihood_span=span, threshold=threshold, detected=detected,
            best_omega_ghz=radns_to_ghz(best),
            window_lo_ghz=radns_to_ghz(lo), window_hi_ghz=radns_to_ghz(hi),
        ))
        if detected:
            logger.info("stage %d (r=%.3g): omega_up/2pi in [%.5g, %.5g] GHz",
                        s, r, radns_to_ghz(lo), radns_to_ghz(hi))
        else:
            logger.warning("stage %d (r=%.3g): no recurrence above the noise floor "
                           "(log-likelihood span %.3g <= %.3g)", s, r, span, threshold)

    if not any(stage.detected for stage in stages):
        raise FailedLocalization([asdict(stage) for stage in stages])

    r_final = float(stage_r[-1])
    table = squeezed_vacuum(r_final, tail_tol=tail_tol)
    n_bar = math.sinh(r_final) ** 2
    center = 0.5 * (lo + hi)
    offset = _probe_offset(n_bar)
    if m * math.pi * (hi - lo) / (2.0 * center) >= offset:
        logger.warning("probe offset %.3g rad is below the remaining window uncertainty", offset)

    T = (m * math.pi + offset) / center
    phi_true = true_omega_up * T
    record = sample_outcomes(table, phi_true, shots, derive_seed(seed, len(stage_r)))
    phi_hat = mle_estimate(record, table, (m * math.pi, m * math.pi + math.pi / 2.0))
    fisher_hat = fisher_information(table, phi_hat)
    fisher_true = fisher_information(table, phi_true)
    omega_hat = phi_hat / T

    def omega_sigma(fisher):
        if fisher <= 0:
            return math.inf
        return radns_to_ghz(1.0 / (T * math.sqrt(shots * fisher)))

    return SearchReport(
        stages=stages,
        r_final=r_final,
        time_ns=T,
        phi_true=phi_true,
        phi_hat=phi_hat,
        omega_hat_ghz=radns_to_ghz(omega_hat),
        delta_omega_ghz=omega_sigma(fisher_hat),
        true_omega_ghz=radns_to_ghz(true_omega_up),
        error_ghz=radns_to_ghz(omega_hat - true_omega_up),
        crlb_sigma_true_ghz=omega_sigma(fisher_true),
        total_shots=per_candidate * candidates * len(stage_r) + shots,
    )


def get_adaptive_search(cfg):
    """Adaptive-search report; a failed localization is reported, not raised."""
    stage_r = cfg.r if cfg.r is not None else cfg.stage_r
    meta = build_meta(cfg.as_meta(), seed=cfg.seed, tail_tol=cfg.tail_tol)
    try:
        report = adaptive_search(stage_r, ghz_to_radns(cfg.true_omega_up_ghz),
                                 cfg.shots, cfg.seed, tail_tol=cfg.tail_tol)
    except FailedLocalization as e:
        logger.warning(str(e))
        return ReportResult(
            name="adaptive-search",
            frame=pd.DataFrame(e.stages, columns=list(StageRecord.__dataclass_fields__)),
            summary={"localized": False, "error": e.to_record()},
            meta=meta,
        )
    summary = {k: v for k, v in asdict(report).items() if k != "stages"}
    summary["localized"] = True
    return ReportResult(
        name="adaptive-search",
        frame=pd.DataFrame([asdict(stage) for stage in report.stages]),
        summary=summary,
        meta=meta,
    )
