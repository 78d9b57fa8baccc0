import pandas as pd

from inference.estimator import estimator_study, phase_to_frequency
from reports.cases import phase_window, resolve_cases
from utils.emitter import ReportResult, build_meta
from utils.sim_config import setting


def get_mle_study(cfg):
    """Monte Carlo MLE statistics against the Cramér–Rao bound per case."""
    phi_true = setting("mle", "phi_true", cfg.phi_true)
    if cfg.window_lo is not None:
        window = (cfg.window_lo, cfg.window_hi)
    else:
        window = phase_window(phi_true)

    rows = []
    estimates = {}
    for case in resolve_cases(cfg):
        table = case.table(cfg.tail_tol)
        study = estimator_study(table, phi_true, cfg.shots, cfg.batches, cfg.seed,
                                window, workers=cfg.workers)
        T = phi_true / case.omega_up
        _, delta_omega = phase_to_frequency(phi_true, study.crlb ** 0.5, T)
        rows.append({
            "r": case.r,
            "n_bar": case.n_bar,
            **study.summary(),
            "fisher_at_truth": study.extra["fisher_at_truth"],
            "time_ns": T,
            "crlb_delta_omega_radns": delta_omega,
        })
        estimates[f"r={case.r:.6g}"] = study.estimates
    return ReportResult(
        name="mle-sim",
        frame=pd.DataFrame(rows),
        summary={"window": list(window), "phi_true": phi_true},
        meta=build_meta(cfg.as_meta(), seed=cfg.seed, tail_tol=cfg.tail_tol),
        extra={"estimates": estimates},
    )
