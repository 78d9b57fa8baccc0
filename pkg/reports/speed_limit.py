import logging

import numpy as np
import pandas as pd

from dynamics.coherence import sigma_x_trace
from dynamics.speed_limit import qsl_bound, qsl_margin, quantum_fisher, variance_crosscheck
from reports.cases import resolve_cases
from utils.emitter import ReportResult, build_meta

logger = logging.getLogger(__name__)


def get_speed_limit_check(cfg):
    """Bures angle against the quantum speed limit for each case."""
    phis = np.linspace(cfg.phi_min, cfg.phi_max, cfg.steps)
    frames = []
    summary = {}
    for case in resolve_cases(cfg):
        table = case.table(cfg.tail_tol)
        trace = sigma_x_trace(table, case.omega_up, phis / case.omega_up)
        F_Q = quantum_fisher(case.omega_up, case.n_bar)
        bound = qsl_bound(trace.times, F_Q)
        frames.append(pd.DataFrame({
            "r": case.r,
            "time_ns": trace.times,
            "bures": trace.bures,
            "qsl_bound": bound,
            "margin": bound - trace.bures,
        }))
        margin = qsl_margin(trace, F_Q)
        summary[f"r={case.r:.6g}"] = {
            "quantum_fisher": F_Q,
            "variance_crosscheck": variance_crosscheck(table, case.omega_up),
            "min_margin": margin,
        }
        logger.info("r=%.6g: F_Q=%.6g, min QSL margin %.3g", case.r, F_Q, margin)
    return ReportResult(
        name="qsl-check",
        frame=pd.concat(frames, ignore_index=True),
        summary=summary,
        meta=build_meta(cfg.as_meta(), tail_tol=cfg.tail_tol),
    )
