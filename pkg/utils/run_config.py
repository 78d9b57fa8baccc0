"""Run configuration: YAML defaults < run file < command-line flags."""
import argparse
import math
from dataclasses import asdict, dataclass, fields
from typing import List, Optional

from utils.errors import ConfigError
from utils.sim_config import load_config, load_run_file

MODES = ("params", "sweep-field", "coherence", "fisher", "mle-sim",
         "qsl-check", "adaptive-search", "report")
FORMATS = ("csv", "json")

# modes that can run from a direct list of r values
R_MODES = ("coherence", "fisher", "mle-sim", "qsl-check", "adaptive-search", "report")
PHYSICAL_ONLY = ("params", "sweep-field")


@dataclass
class RunConfig:
    mode: str
    r: Optional[List[float]] = None
    omega0_ghz: Optional[float] = None
    gap_ghz: Optional[float] = None
    field_t: Optional[float] = None
    omega_ghz: Optional[float] = None
    chi_ghz: Optional[float] = None
    gyro_ghz_per_t: Optional[float] = None
    t2star_ns: Optional[float] = None
    ns_product: Optional[float] = None
    omega_up_ghz: Optional[float] = None
    phi_min: Optional[float] = None
    phi_max: Optional[float] = None
    steps: Optional[int] = None
    field_min_t: Optional[float] = None
    field_max_t: Optional[float] = None
    phi_true: Optional[float] = None
    window_lo: Optional[float] = None
    window_hi: Optional[float] = None
    shots: Optional[int] = None
    batches: Optional[int] = None
    seed: Optional[int] = None
    workers: Optional[int] = None
    stage_r: Optional[List[float]] = None
    true_omega_up_ghz: Optional[float] = None
    tail_tol: Optional[float] = None
    out: Optional[str] = None
    format: Optional[str] = None

    @property
    def physical(self):
        return any(v is not None for v in (self.omega0_ghz, self.gap_ghz, self.omega_ghz, self.chi_ghz))

    def fill_defaults(self):
        """Resolve unset fields from config/sim_config.yaml."""
        sim = load_config("simulation")
        grids = load_config("grids")
        sweep = load_config("sweep_field")
        run = load_config("run")
        adaptive = load_config("adaptive_search")
        defaults = {
            "gyro_ghz_per_t": sim["gyromagnetic_ghz_per_t"],
            "tail_tol": sim["tail_tol"],
            "phi_min": grids["phi_min"],
            "phi_max": grids["phi_max"],
            "steps": sweep["steps"] if self.mode == "sweep-field" else grids["steps"],
            "field_min_t": sweep["field_min_t"],
            "field_max_t": sweep["field_max_t"],
            "omega_up_ghz": load_config("coherence")["omega_up_ghz"],
            "shots": run["shots"],
            "batches": run["batches"],
            "seed": run["seed"],
            "workers": run["workers"],
            "format": run["format"],
            "stage_r": list(adaptive["stage_r"]),
            "true_omega_up_ghz": adaptive["true_omega_up_ghz"],
        }
        for key, value in defaults.items():
            if getattr(self, key) is None:
                setattr(self, key, value)
        return self

    def validate(self):
        """Collect every violated field; raise ConfigError if any."""
        errors = []
        if self.mode not in MODES:
            errors.append(f"mode: must be one of {', '.join(MODES)}")
        if self.r is not None and self.physical:
            errors.append("r: give either --r or physical parameters, not both")
        if self.r is None and not self.physical and self.mode != "adaptive-search":
            errors.append("r: give either --r or physical parameters")
        if self.r is not None:
            if self.mode in PHYSICAL_ONLY:
                errors.append(f"r: mode {self.mode} needs physical parameters")
            if not self.r or any(not math.isfinite(v) or v < 0 for v in self.r):
                errors.append("r: values must be finite and >= 0")
        if self.physical:
            if (self.omega0_ghz is None) == (self.gap_ghz is None):
                errors.append("omega0_ghz/gap_ghz: give exactly one of them")
            if self.omega_ghz is None or self.omega_ghz < 0:
                errors.append("omega_ghz: required and >= 0 with physical parameters")
            if self.chi_ghz is None or self.chi_ghz < 0:
                errors.append("chi_ghz: required and >= 0 with physical parameters")
            if self.mode == "sweep-field" and self.gap_ghz is None:
                errors.append("gap_ghz: sweep-field maps fields through the anisotropy gap")
        if self.gyro_ghz_per_t is not None and self.gyro_ghz_per_t <= 0:
            errors.append("gyro_ghz_per_t: must be > 0")
        if self.t2star_ns is not None and self.t2star_ns <= 0:
            errors.append("t2star_ns: must be > 0")
        if self.ns_product is not None and self.ns_product <= 0:
            errors.append("ns_product: must be > 0")
        if self.omega_up_ghz is not None and self.omega_up_ghz <= 0:
            errors.append("omega_up_ghz: must be > 0")
        if self.steps is None or self.steps < 2:
            errors.append("steps: must be >= 2")
        if self.phi_min is not None and self.phi_max is not None and not self.phi_min < self.phi_max:
            errors.append("phi_min/phi_max: need phi_min < phi_max")
        if self.mode in ("coherence", "qsl-check") and self.phi_min is not None and self.phi_min < 0:
            errors.append("phi_min: time axis must start at >= 0")
        if self.field_min_t is not None and self.field_max_t is not None \
                and not self.field_min_t < self.field_max_t:
            errors.append("field_min_t/field_max_t: need field_min_t < field_max_t")
        if self.shots is None or self.shots < 1:
            errors.append("shots: must be >= 1")
        if self.mode == "mle-sim" and (self.batches is None or self.batches < 30):
            errors.append("batches: must be >= 30")
        if (self.window_lo is None) != (self.window_hi is None):
            errors.append("window_lo/window_hi: give both or neither")
        if self.tail_tol is None or not 0 < self.tail_tol < 1:
            errors.append("tail_tol: must lie in (0, 1)")
        if self.workers is not None and self.workers < 1:
            errors.append("workers: must be >= 1")
        if self.seed is None or not 0 <= self.seed < 2 ** 64:
            errors.append("seed: must be a 64-bit non-negative integer")
        if self.format not in FORMATS:
            errors.append(f"format: must be one of {', '.join(FORMATS)}")
        if self.mode == "report" and self.out is None:
            errors.append("out: report mode needs an output path")
        if self.mode == "adaptive-search":
            if not self.stage_r or any(v < 0 for v in self.stage_r):
                errors.append("stage_r: need at least one stage with r >= 0")
            if self.true_omega_up_ghz is None or self.true_omega_up_ghz <= 0:
                errors.append("true_omega_up_ghz: must be > 0")
        if errors:
            raise ConfigError(errors)
        return self

    def as_meta(self):
        return {k: v for k, v in asdict(self).items() if k != "out"}


def build_parser():
    p = argparse.ArgumentParser(
        prog="quenchsim",
        description="Qubit-conditioned quench metrology of a ferromagnet's Kittel mode",
    )
    p.add_argument("mode", choices=MODES)
    p.add_argument("--config", help="YAML or JSON run file; flags override it")
    p.add_argument("--r", type=float, nargs="+", help="relative squeezing value(s)")
    p.add_argument("--omega0-ghz", type=float, dest="omega0_ghz", help="Kittel frequency omega0/2pi")
    p.add_argument("--gap-ghz", type=float, dest="gap_ghz", help="(2SK_z - SK_y)/2pi")
    p.add_argument("--field-t", type=float, dest="field_t", help="applied field mu0*h (T)")
    p.add_argument("--omega-ghz", type=float, dest="omega_ghz", help="Omega/2pi (U(1)-breaking)")
    p.add_argument("--chi-ghz", type=float, dest="chi_ghz", help="chi/2pi (dispersive coupling)")
    p.add_argument("--gyro-ghz-per-t", type=float, dest="gyro_ghz_per_t")
    p.add_argument("--t2star-ns", type=float, dest="t2star_ns")
    p.add_argument("--ns-product", type=float, dest="ns_product", help="N*S for the validity check")
    p.add_argument("--omega-up-ghz", type=float, dest="omega_up_ghz",
                   help="omega_up/2pi for the time axis when only r is given")
    p.add_argument("--phi-min", type=float, dest="phi_min")
    p.add_argument("--phi-max", type=float, dest="phi_max")
    p.add_argument("--steps", type=int)
    p.add_argument("--field-min-t", type=float, dest="field_min_t")
    p.add_argument("--field-max-t", type=float, dest="field_max_t")
    p.add_argument("--phi-true", type=float, dest="phi_true")
    p.add_argument("--window-lo", type=float, dest="window_lo")
    p.add_argument("--window-hi", type=float, dest="window_hi")
    p.add_argument("--shots", type=int)
    p.add_argument("--batches", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--stage-r", type=float, nargs="+", dest="stage_r")
    p.add_argument("--true-omega-up-ghz", type=float, dest="true_omega_up_ghz")
    p.add_argument("--tail-tol", type=float, dest="tail_tol")
    p.add_argument("--out")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--verbose", action="store_true")
    return p


def config_from_args(args):
    """Merge the run file (if any) under the parsed flags, then validate."""
    values = {}
    if args.config:
        file_values = load_run_file(args.config)
        known = {f.name for f in fields(RunConfig)}
        unknown = sorted(set(file_values) - known)
        if unknown:
            raise ConfigError([f"{key}: unknown run-file key" for key in unknown])
        values.update(file_values)
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    values["mode"] = args.mode
    if isinstance(values.get("r"), (int, float)):
        values["r"] = [float(values["r"])]
    return RunConfig(**values).fill_defaults().validate()
