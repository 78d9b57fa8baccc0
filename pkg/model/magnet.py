"""Effective Kittel-mode model of the anisotropic ferromagnet.

Frequencies are stored as angular frequencies in rad/ns. The constructors that
take GHz multiply by 2π; times are in ns throughout.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from utils.errors import StabilityError
from utils.sim_config import setting

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
SIGMAS = ("down", "up")


def ghz_to_radns(f_ghz):
    return TWO_PI * f_ghz


def radns_to_ghz(omega):
    return omega / TWO_PI


def omega0_from_field(anisotropy_gap, field, gyromagnetic=None):
    """Kittel-mode frequency 2π·(gap + |γ|·μ0h) in rad/ns.

    `anisotropy_gap` is (2SK_z − SK_y)/2π in GHz, `field` is μ0h in tesla
    (negative values are allowed), `gyromagnetic` is |γ| in GHz/T.
    """
    gyromagnetic = setting("simulation", "gyromagnetic_ghz_per_t", gyromagnetic)
    if gyromagnetic <= 0:
        raise ValueError(f"gyromagnetic must be positive, got {gyromagnetic}")
    return TWO_PI * (anisotropy_gap + gyromagnetic * field)


@dataclass(frozen=True)
class SystemParams:
    omega0: float
    Omega: float
    chi: float
    gyromagnetic: float = 28.0
    T2star: Optional[float] = None
    NS_product: Optional[float] = None
    # provenance when omega0 came from the field map
    anisotropy_gap: Optional[float] = None
    field: Optional[float] = None

    def __post_init__(self):
        if self.Omega < 0:
            raise ValueError(f"Omega must be >= 0, got {self.Omega}")
        if self.chi < 0:
            raise ValueError(f"chi must be >= 0, got {self.chi}")
        if self.T2star is not None and self.T2star <= 0:
            raise ValueError(f"T2star must be > 0 when given, got {self.T2star}")
        if self.NS_product is not None and self.NS_product <= 0:
            raise ValueError(f"NS_product must be > 0 when given, got {self.NS_product}")

    @classmethod
    def from_ghz(cls, omega_ghz, chi_ghz, omega0_ghz=None, anisotropy_gap=None,
                 field=None, gyromagnetic=None, T2star=None, NS_product=None):
        """Build from ordinary frequencies (GHz): either omega0_ghz or gap + field."""
        gyromagnetic = setting("simulation", "gyromagnetic_ghz_per_t", gyromagnetic)
        if (omega0_ghz is None) == (anisotropy_gap is None):
            raise ValueError("give exactly one of omega0_ghz or anisotropy_gap (+ field)")
        if omega0_ghz is not None:
            omega0 = ghz_to_radns(omega0_ghz)
        else:
            field = 0.0 if field is None else field
            omega0 = omega0_from_field(anisotropy_gap, field, gyromagnetic)
        return cls(
            omega0=omega0,
            Omega=ghz_to_radns(omega_ghz),
            chi=ghz_to_radns(chi_ghz),
            gyromagnetic=gyromagnetic,
            T2star=T2star,
            NS_product=NS_product,
            anisotropy_gap=anisotropy_gap,
            field=field,
        )

    def with_field(self, field):
        """Same magnet at another applied field; needs the anisotropy gap."""
        if self.anisotropy_gap is None:
            raise ValueError("field sweeps need SystemParams built from an anisotropy gap")
        return SystemParams(
            omega0=omega0_from_field(self.anisotropy_gap, field, self.gyromagnetic),
            Omega=self.Omega,
            chi=self.chi,
            gyromagnetic=self.gyromagnetic,
            T2star=self.T2star,
            NS_product=self.NS_product,
            anisotropy_gap=self.anisotropy_gap,
            field=field,
        )

    @property
    def omega_eff(self):
        return {"down": self.omega0 - self.chi, "up": self.omega0 + self.chi}


@dataclass(frozen=True)
class DerivedQuantities:
    omega_eff_up: float
    omega_eff_down: float
    omega_up: float
    omega_down: float
    r_up: float
    r_down: float
    r: float
    n_bar: float
    theta_up: float = math.pi
    theta_down: float = 0.0

    def as_row(self):
        return {
            "omega_eff_up_radns": self.omega_eff_up,
            "omega_eff_down_radns": self.omega_eff_down,
            "omega_up_radns": self.omega_up,
            "omega_down_radns": self.omega_down,
            "omega_up_ghz": radns_to_ghz(self.omega_up),
            "omega_down_ghz": radns_to_ghz(self.omega_down),
            "r_up": self.r_up,
            "r_down": self.r_down,
            "r": self.r,
            "n_bar": self.n_bar,
            "theta_up": self.theta_up,
            "theta_down": self.theta_down,
        }


@dataclass(frozen=True)
class ValidityReport:
    ratio: float
    threshold: float
    warning: bool


def stability_margins(params):
    """ω_eff,σ − 2Ω for both qubit states, binding state first."""
    return {sigma: params.omega_eff[sigma] - 2.0 * params.Omega for sigma in SIGMAS}


def check_stability(params):
    """Return the binding margin ω_0 − χ − 2Ω, or raise StabilityError."""
    margins = stability_margins(params)
    for sigma in SIGMAS:
        if not margins[sigma] > 0:
            raise StabilityError(sigma, margins[sigma])
    return margins["down"]


def derive_quantities(params):
    """Eigenfrequencies and qubit-conditioned squeezing of the Kittel mode."""
    check_stability(params)
    two_omega = 2.0 * params.Omega
    w_up = params.omega_eff["up"]
    w_down = params.omega_eff["down"]
    omega_up = math.sqrt(w_up * w_up - two_omega * two_omega)
    omega_down = math.sqrt(w_down * w_down - two_omega * two_omega)
    r_up = 0.5 * float(np.arctanh(two_omega / w_up))
    r_down = 0.5 * float(np.arctanh(two_omega / w_down))
    r = r_down - r_up
    return DerivedQuantities(
        omega_eff_up=w_up,
        omega_eff_down=w_down,
        omega_up=omega_up,
        omega_down=omega_down,
        r_up=r_up,
        r_down=r_down,
        r=r,
        n_bar=math.sinh(r) ** 2,
    )


def nonlinearity_validity(q, NS_product, threshold=None):
    """Compare the larger ground-state occupation sinh²r_σ with N·S."""
    if NS_product <= 0:
        raise ValueError(f"NS_product must be positive, got {NS_product}")
    threshold = setting("simulation", "validity_threshold", threshold)
    occupation = max(math.sinh(q.r_down) ** 2, math.sinh(q.r_up) ** 2)
    ratio = occupation / NS_product
    warning = ratio > threshold
    if warning:
        logger.warning(
            "Linear magnon model questionable: sinh^2(r_down)/NS = %.4g exceeds %.4g",
            ratio, threshold,
        )
    return ValidityReport(ratio=ratio, threshold=threshold, warning=warning)
