import logging
import math

import numpy as np
import pytest

from model.field_sweep import sweep_field
from model.magnet import (
    DerivedQuantities,
    SystemParams,
    check_stability,
    derive_quantities,
    ghz_to_radns,
    nonlinearity_validity,
    omega0_from_field,
)
from utils.errors import StabilityError


def test_field_map_zeeman_splitting():
    omega0 = omega0_from_field(7.0, 0.18, 28.0)
    assert omega0 == pytest.approx(2 * math.pi * 12.04, rel=1e-12)
    # 0.18 T with |gamma| = 28 GHz/T is a 5.04 GHz Zeeman contribution
    zeeman = omega0 - omega0_from_field(7.0, 0.0, 28.0)
    assert zeeman / (2 * math.pi) == pytest.approx(5.04, rel=1e-12)


@pytest.mark.parametrize("gap, field, expected_ghz", [(7.0, 0.0, 7.0), (2.0, 0.18, 7.04)])
def test_field_map_examples(gap, field, expected_ghz):
    assert omega0_from_field(gap, field, 28.0) == pytest.approx(ghz_to_radns(expected_ghz))


def test_field_map_rejects_nonpositive_gyromagnetic():
    with pytest.raises(ValueError):
        omega0_from_field(7.0, 0.1, 0.0)


def test_derive_quantities_reference_point():
    q = derive_quantities(SystemParams(omega0=3.0, Omega=0.5, chi=0.5))
    assert q.omega_eff_up == 3.5
    assert q.omega_eff_down == 2.5
    assert q.omega_up == pytest.approx(3.354102, abs=1e-6)
    assert q.omega_down == pytest.approx(2.291288, abs=1e-6)
    assert q.r_up == pytest.approx(0.146947, abs=1e-6)
    assert q.r_down == pytest.approx(0.211824, abs=1e-6)
    assert q.r == pytest.approx(0.064877, abs=2e-6)
    assert q.n_bar == pytest.approx(math.sinh(q.r) ** 2)
    assert q.n_bar == pytest.approx(0.004215, abs=1e-6)
    assert q.theta_up == math.pi and q.theta_down == 0.0


@pytest.mark.parametrize("omega0, Omega, chi", [(3.0, 0.5, 0.5), (12.0, 3.1, 0.02), (5.0, 2.4, 0.05)])
def test_eigenfrequency_definition(omega0, Omega, chi):
    q = derive_quantities(SystemParams(omega0=omega0, Omega=Omega, chi=chi))
    assert q.omega_up ** 2 + 4 * Omega ** 2 == pytest.approx(q.omega_eff_up ** 2, rel=1e-12)
    assert q.omega_down ** 2 + 4 * Omega ** 2 == pytest.approx(q.omega_eff_down ** 2, rel=1e-12)
    assert q.r_down > q.r_up >= 0
    assert q.r > 0


def test_no_squeezing_without_omega():
    q = derive_quantities(SystemParams(omega0=3.0, Omega=0.0, chi=0.5))
    assert q.r_up == q.r_down == q.r == 0.0
    assert q.n_bar == 0.0
    assert q.omega_up == q.omega_eff_up
    assert q.omega_down == q.omega_eff_down


def test_qubit_independent_squeezing_cancels():
    q = derive_quantities(SystemParams(omega0=3.0, Omega=0.5, chi=0.0))
    assert q.r_up == q.r_down
    assert q.r == 0.0
    assert q.n_bar == 0.0


def test_stability_ok():
    assert check_stability(SystemParams(omega0=3.0, Omega=0.5, chi=0.5)) == pytest.approx(1.5)


def test_stability_violation_carries_sigma_and_margin():
    with pytest.raises(StabilityError) as info:
        check_stability(SystemParams(omega0=1.4, Omega=0.5, chi=0.5))
    assert info.value.sigma == "down"
    assert info.value.margin == pytest.approx(-0.1)
    assert info.value.exit_code == 3


def test_stability_at_the_boundary():
    margin = check_stability(SystemParams(omega0=1.5 + 1e-9, Omega=0.5, chi=0.5))
    assert margin == pytest.approx(1e-9, abs=1e-14)


def test_derive_quantities_refuses_unstable_params():
    with pytest.raises(StabilityError):
        derive_quantities(SystemParams(omega0=1.0, Omega=0.5, chi=0.5))


def test_params_validation():
    with pytest.raises(ValueError):
        SystemParams(omega0=3.0, Omega=-0.1, chi=0.5)
    with pytest.raises(ValueError):
        SystemParams(omega0=3.0, Omega=0.5, chi=0.5, T2star=0.0)


def test_from_ghz_needs_exactly_one_frequency_source():
    with pytest.raises(ValueError):
        SystemParams.from_ghz(omega_ghz=0.5, chi_ghz=0.5)
    params = SystemParams.from_ghz(omega_ghz=0.5, chi_ghz=0.5, anisotropy_gap=7.0, field=0.18)
    assert params.omega0 == pytest.approx(ghz_to_radns(12.04))
    assert params.Omega == pytest.approx(ghz_to_radns(0.5))


def _derived(r_down, r_up=0.0):
    return DerivedQuantities(omega_eff_up=1.0, omega_eff_down=1.0, omega_up=1.0, omega_down=1.0,
                             r_up=r_up, r_down=r_down, r=r_down - r_up,
                             n_bar=math.sinh(r_down - r_up) ** 2)


def test_validity_small_occupation():
    report = nonlinearity_validity(_derived(0.211824), 1e6)
    assert report.ratio == pytest.approx(4.57e-8, rel=1e-2)
    assert not report.warning


def test_validity_vacuum():
    report = nonlinearity_validity(_derived(0.0), 10.0)
    assert report.ratio == 0.0
    assert not report.warning


def test_validity_warning_is_logged(caplog):
    with caplog.at_level(logging.WARNING, logger="model.magnet"):
        report = nonlinearity_validity(_derived(2.0), 100.0)
    assert report.ratio == pytest.approx(0.131544, rel=1e-4)
    assert report.warning
    assert "Linear magnon model questionable" in caplog.text


def test_field_sweep_diverges_toward_instability(caplog):
    template = SystemParams.from_ghz(omega_ghz=0.5, chi_ghz=0.5, anisotropy_gap=7.0)
    # boundary: 7 + 28h - 0.5 = 1  ->  h = -0.19643 T
    fields = np.linspace(0.2, -0.1964, 200)
    frame = sweep_field(template, fields)
    assert list(frame.columns) == ["field_T", "r", "n_bar", "omega_up_radns", "stable"]
    assert frame["stable"].all()
    assert np.all(np.diff(frame["r"].to_numpy()) > 0)
    assert frame["r"].iloc[-1] > 5 * frame["r"].iloc[0]

    with caplog.at_level(logging.WARNING, logger="model.field_sweep"):
        beyond = sweep_field(template, [-0.19, -0.2, -0.21])
    assert list(beyond["stable"]) == [True, False, False]
    assert beyond["r"].isna().sum() == 2
    assert "stability boundary" in caplog.text


def test_field_sweep_without_omega_is_flat():
    template = SystemParams.from_ghz(omega_ghz=0.0, chi_ghz=0.5, anisotropy_gap=7.0)
    frame = sweep_field(template, np.linspace(-0.1, 0.2, 20))
    assert (frame["r"] == 0.0).all()


def test_small_chi_reaches_comparable_squeezing():
    strong = SystemParams.from_ghz(omega_ghz=0.5, chi_ghz=0.5, anisotropy_gap=7.0)
    weak = SystemParams.from_ghz(omega_ghz=0.5, chi_ghz=0.005, anisotropy_gap=2.0)
    r_strong = derive_quantities(strong.with_field(0.0)).r
    # weak-chi boundary: 2 + 28h - 0.005 = 1 at h = -0.035536 T
    fields = np.linspace(0.0, -0.0355, 400)
    r_weak = sweep_field(weak, fields)["r"].max()
    assert r_weak > r_strong


def test_field_sweep_rejects_unsorted_grid():
    template = SystemParams.from_ghz(omega_ghz=0.5, chi_ghz=0.5, anisotropy_gap=7.0)
    with pytest.raises(ValueError):
        sweep_field(template, [0.0, 0.1, 0.05])


@pytest.mark.parametrize("omega0, Omega, chi", [(3.0, 0.5, 0.5), (12.0, 3.1, 0.02), (44.0, 0.0, 1.0)])
def test_hyperbolic_identities(omega0, Omega, chi):
    q = derive_quantities(SystemParams(omega0=omega0, Omega=Omega, chi=chi))
    for r_s, w_s, w_eff in ((q.r_up, q.omega_up, q.omega_eff_up), (q.r_down, q.omega_down, q.omega_eff_down)):
        assert math.cosh(2 * r_s) * w_s == pytest.approx(w_eff, rel=1e-12)
        assert math.sinh(2 * r_s) * w_s == pytest.approx(2 * Omega, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("scale", [1e-3, 0.5, 7.0, 1e4])
def test_derived_quantities_scale_with_frequencies(scale):
    base = derive_quantities(SystemParams(omega0=3.0, Omega=0.5, chi=0.5))
    scaled = derive_quantities(SystemParams(omega0=3.0 * scale, Omega=0.5 * scale, chi=0.5 * scale))
    assert scaled.r_up == pytest.approx(base.r_up, rel=1e-12)
    assert scaled.r_down == pytest.approx(base.r_down, rel=1e-12)
    assert scaled.r == pytest.approx(base.r, rel=1e-10)
    assert scaled.n_bar == pytest.approx(base.n_bar, rel=1e-10)
    assert scaled.omega_up == pytest.approx(scale * base.omega_up, rel=1e-12)
    assert scaled.omega_down == pytest.approx(scale * base.omega_down, rel=1e-12)
