from functools import lru_cache
from pathlib import Path

import yaml

CONFIG_FILE = Path(__file__).parent.parent / "config" / "sim_config.yaml"


@lru_cache(maxsize=None)
def _read_config(config_file):
    with open(config_file, "r") as f:
        return yaml.safe_load(f)


def load_config(section=None, config_file=CONFIG_FILE):
    """Project defaults from config/sim_config.yaml, optionally one section."""
    cfg = _read_config(str(config_file))
    if section is None:
        return cfg
    return cfg[section]


def setting(section, key, value=None):
    """Return `value` unless it is None, else the YAML default."""
    if value is not None:
        return value
    return load_config(section)[key]


def load_run_file(path):
    """Read a user run file; JSON parses through the YAML loader."""
    path = Path(path)
    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise OSError(f"Could not read run file {path}: {e}") from e
    return data or {}
