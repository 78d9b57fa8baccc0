import logging
import math

import numpy as np
import pandas as pd

from model.magnet import derive_quantities
from utils.errors import StabilityError

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["field_T", "r", "n_bar", "omega_up_radns", "stable"]


def _check_monotone(fields):
    steps = np.diff(fields)
    if steps.size and not (np.all(steps > 0) or np.all(steps < 0)):
        raise ValueError("field grid must be strictly monotone")


def sweep_field(template, fields):
    """Squeezing vs applied field; unstable points are flagged, not fatal.

    `template` must carry the anisotropy gap so each field maps to ω_0.
    """
    fields = np.asarray(fields, dtype=float)
    _check_monotone(fields)

    rows = []
    unstable = 0
    for field in fields:
        params = template.with_field(float(field))
        try:
            q = derive_quantities(params)
        except StabilityError:
            unstable += 1
            rows.append((float(field), math.nan, math.nan, math.nan, False))
            continue
        rows.append((float(field), q.r, q.n_bar, q.omega_up, True))

    if unstable:
        logger.warning("%d of %d field points are beyond the stability boundary",
                       unstable, len(fields))
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)
