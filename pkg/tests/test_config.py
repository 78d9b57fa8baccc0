import pytest

from utils.errors import ConfigError
from utils.run_config import RunConfig, build_parser, config_from_args
from utils.sim_config import load_config, load_run_file, setting


def test_yaml_defaults():
    assert load_config("simulation")["tail_tol"] == 1e-12
    assert load_config("simulation")["truncation_cap"] == 4096
    assert setting("mle", "grid_points") == 400
    assert setting("mle", "grid_points", 150) == 150


def test_missing_run_file_names_the_path(tmp_path):
    with pytest.raises(OSError, match="nope.yaml"):
        load_run_file(tmp_path / "nope.yaml")


def test_flags_fill_from_defaults():
    cfg = config_from_args(build_parser().parse_args(["fisher", "--r", "1"]))
    assert cfg.r == [1.0]
    assert cfg.steps == 4000
    assert cfg.seed == 20240917
    assert cfg.format == "csv"


def test_sweep_uses_its_own_grid():
    args = build_parser().parse_args(["sweep-field", "--gap-ghz", "7", "--omega-ghz", "0.5",
                                      "--chi-ghz", "0.5"])
    assert config_from_args(args).steps == 400


def test_validation_lists_every_field():
    cfg = RunConfig(mode="mle-sim", r=[-1.0], steps=1, shots=0, batches=5, seed=-3,
                    tail_tol=2.0, format="xml", window_lo=3.2)
    with pytest.raises(ConfigError) as info:
        cfg.validate()
    fields = {e.split(":")[0] for e in info.value.errors}
    assert {"r", "steps", "shots", "batches", "seed", "tail_tol", "format", "window_lo/window_hi"} <= fields
    assert info.value.exit_code == 2


def test_physical_parameters_need_one_frequency_source():
    cfg = RunConfig(mode="params", omega0_ghz=3.0, gap_ghz=7.0, omega_ghz=0.5, chi_ghz=0.5)
    with pytest.raises(ConfigError, match="omega0_ghz/gap_ghz"):
        cfg.fill_defaults().validate()
