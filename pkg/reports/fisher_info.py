import math

import numpy as np
import pandas as pd

from dynamics.speed_limit import quantum_fisher
from inference.fisher import fisher_asymptote, fisher_information, fisher_profile, plateau_offset
from reports.cases import resolve_cases
from utils.emitter import ReportResult, build_meta


def get_fisher_info(cfg):
    """F_C(φ) on the φ grid for each case; dephased column when T2* is set."""
    phis = np.linspace(cfg.phi_min, cfg.phi_max, cfg.steps)
    frames = []
    summary = {}
    for case in resolve_cases(cfg):
        table = case.table(cfg.tail_tol)
        profile = fisher_profile(table, phis)
        frame = pd.DataFrame({"r": case.r, "phi": phis, "fisher": profile.values})
        if cfg.t2star_ns is not None:
            damped = fisher_profile(table, phis, case.omega_up, cfg.t2star_ns)
            frame["fisher_dephased"] = damped.values
        frames.append(frame)
        summary[f"r={case.r:.6g}"] = {
            "n_bar": case.n_bar,
            "plateau": fisher_information(table, math.pi + plateau_offset(case.n_bar)),
            "asymptote": fisher_asymptote(case.n_bar),
            "max_on_grid": float(profile.values.max()) if phis.size else 0.0,
            "quantum_bound": quantum_fisher(1.0, case.n_bar),
        }
    return ReportResult(
        name="fisher",
        frame=pd.concat(frames, ignore_index=True),
        summary=summary,
        meta=build_meta(cfg.as_meta(), tail_tol=cfg.tail_tol),
    )
