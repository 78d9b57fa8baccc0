"""Turn a RunConfig into the (r, ω_↑) cases the report builders evaluate."""
import math
from dataclasses import dataclass
from typing import Optional

from model.magnet import DerivedQuantities, SystemParams, derive_quantities, ghz_to_radns
from states.squeezed_vacuum import squeezed_vacuum


@dataclass(frozen=True)
class Case:
    r: float
    omega_up: float  # rad/ns
    derived: Optional[DerivedQuantities] = None

    @property
    def n_bar(self):
        return math.sinh(self.r) ** 2

    def table(self, tail_tol):
        # the protocol state |0>_down carries theta_down = 0
        return squeezed_vacuum(self.r, theta=0.0, tail_tol=tail_tol)


def system_params(cfg):
    return SystemParams.from_ghz(
        omega_ghz=cfg.omega_ghz,
        chi_ghz=cfg.chi_ghz,
        omega0_ghz=cfg.omega0_ghz,
        anisotropy_gap=cfg.gap_ghz,
        field=cfg.field_t,
        gyromagnetic=cfg.gyro_ghz_per_t,
        T2star=cfg.t2star_ns,
        NS_product=cfg.ns_product,
    )


def resolve_cases(cfg):
    """One case from physical parameters, or one per requested r."""
    if cfg.physical:
        q = derive_quantities(system_params(cfg))
        return [Case(r=q.r, omega_up=q.omega_up, derived=q)]
    omega_up = ghz_to_radns(cfg.omega_up_ghz)
    return [Case(r=float(r), omega_up=omega_up) for r in cfg.r]


def phase_window(phi):
    """Quarter-period (kπ/2, (k+1)π/2] holding phi."""
    half_pi = math.pi / 2.0
    k = math.floor(phi / half_pi)
    return k * half_pi, (k + 1) * half_pi
