import numpy as np
import pandas as pd

from dynamics.coherence import dephased_sigma_x, sigma_x_trace
from reports.cases import resolve_cases
from utils.emitter import ReportResult, build_meta


def get_coherence(cfg):
    """⟨σ_x⟩ and p(+|φ) over φ = ω_↑t for each case, optionally dephased."""
    phis = np.linspace(cfg.phi_min, cfg.phi_max, cfg.steps)
    frames = []
    summary = {}
    for case in resolve_cases(cfg):
        table = case.table(cfg.tail_tol)
        trace = sigma_x_trace(table, case.omega_up, phis / case.omega_up)
        frame = pd.DataFrame({
            "r": case.r,
            "phi": phis,
            "time_ns": trace.times,
            "sigma_x": trace.sigma_x,
            "p_plus": trace.p_plus,
            "coherence_abs": trace.coherence_abs,
            "bures": trace.bures,
        })
        if cfg.t2star_ns is not None:
            damped = dephased_sigma_x(table, case.omega_up, trace.times, cfg.t2star_ns)
            frame["sigma_x_dephased"] = damped
            frame["p_plus_dephased"] = 0.5 * (1.0 + damped)
        frames.append(frame)
        summary[f"r={case.r:.6g}"] = {
            "n_bar": case.n_bar,
            "omega_up_radns": case.omega_up,
            "min_abs_overlap": float(np.min(np.abs(trace.overlap))) if phis.size else 1.0,
            "n_max": table.n_max,
        }
    return ReportResult(
        name="coherence",
        frame=pd.concat(frames, ignore_index=True),
        summary=summary,
        meta=build_meta(cfg.as_meta(), tail_tol=cfg.tail_tol),
    )
