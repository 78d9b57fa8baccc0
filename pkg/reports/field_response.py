import numpy as np

from model.field_sweep import sweep_field
from reports.cases import system_params
from utils.emitter import ReportResult, build_meta


def get_field_response(cfg):
    """r(h), n̄(h) and ω_↑(h) across the configured field grid."""
    template = system_params(cfg)
    fields = np.linspace(cfg.field_min_t, cfg.field_max_t, cfg.steps)
    frame = sweep_field(template, fields)

    stable = frame[frame["stable"]]
    summary = {
        "stable_points": int(len(stable)),
        "unstable_points": int(len(frame) - len(stable)),
        "r_max": float(stable["r"].max()) if len(stable) else float("nan"),
        "field_at_r_max_T": float(stable.loc[stable["r"].idxmax(), "field_T"]) if len(stable) else float("nan"),
    }
    return ReportResult(
        name="sweep-field",
        frame=frame,
        summary=summary,
        meta=build_meta(cfg.as_meta(), tail_tol=cfg.tail_tol),
    )
