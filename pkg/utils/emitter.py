"""CSV / JSON writers for report tables.

Column order is the order of the DataFrame a report builds. CSV files start
with a `# meta: {...}` comment line (and `# summary: {...}` when the report has
scalar results); floats use 17 significant digits. JSON files hold `meta`,
`summary`, `columns`, `data` (column -> list) and any extra payload, with
floats written by `repr`, which round-trips bit-exactly.
"""
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from utils.sim_config import load_config


@dataclass
class ReportResult:
    name: str
    frame: pd.DataFrame
    summary: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


def build_meta(parameters, seed=None, tail_tol=None):
    project = load_config("project")
    return {
        "program": project["name"],
        "version": project["version"],
        "seed": seed,
        "tail_tol": tail_tol,
        "parameters": parameters,
    }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray, pd.Series)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _dumps(value):
    return json.dumps(_jsonable(value), sort_keys=True, allow_nan=False)


def render_csv(result):
    lines = [f"# meta: {_dumps(result.meta)}\n"]
    if result.summary:
        lines.append(f"# summary: {_dumps(result.summary)}\n")
    body = result.frame.to_csv(index=False, float_format="%.17g", na_rep="nan",
                               lineterminator="\n")
    return "".join(lines) + body


def render_json(result):
    payload = {
        "meta": result.meta,
        "summary": result.summary,
        "columns": list(result.frame.columns),
        "data": {col: result.frame[col].tolist() for col in result.frame.columns},
    }
    payload.update(result.extra)
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True, allow_nan=False) + "\n"


def render(result, fmt):
    if fmt == "csv":
        return render_csv(result)
    if fmt == "json":
        return render_json(result)
    raise ValueError(f"unknown output format {fmt!r}")


def emit(result, path, fmt):
    """Write `result` to `path` in the given format; returns the path."""
    text = render(result, fmt)
    path = Path(path)
    try:
        with open(path, "w", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OSError(f"Could not write {fmt} output to {path}: {e}") from e
    return path


def read_json(path):
    with open(path, "r") as f:
        return json.load(f)
