import logging

import pandas as pd

from model.magnet import check_stability, derive_quantities, nonlinearity_validity
from reports.cases import system_params
from utils.emitter import ReportResult, build_meta

logger = logging.getLogger(__name__)


def get_derived_params(cfg):
    """Derived frequencies, squeezing and stability/validity verdicts."""
    params = system_params(cfg)
    margin = check_stability(params)
    q = derive_quantities(params)

    row = {"omega0_radns": params.omega0, **q.as_row(), "stability_margin_radns": margin}
    if params.NS_product is not None:
        validity = nonlinearity_validity(q, params.NS_product)
        row["validity_ratio"] = validity.ratio
        row["validity_warning"] = validity.warning

    logger.info("r_up=%.6g r_down=%.6g r=%.6g n_bar=%.6g omega_up/2pi=%.6g GHz",
                q.r_up, q.r_down, q.r, q.n_bar, row["omega_up_ghz"])
    return ReportResult(
        name="params",
        frame=pd.DataFrame([row]),
        summary=dict(row),
        meta=build_meta(cfg.as_meta(), tail_tol=cfg.tail_tol),
    )
