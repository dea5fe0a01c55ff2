"""Smoke tests for the python bindings against the compiled extension."""

import math
import os

import numpy as np
import pytest

import dephasure as dp

PRESET_DIR = os.environ.get("DEPHASURE_PRESET_DIR", "presets")


def test_special_functions():
    assert dp.exp_integral_e1(1.0) == pytest.approx(0.21938393439552027, rel=1e-12)
    g = dp.upper_incomplete_gamma(-1, 1.0)
    assert g.real == pytest.approx(0.14849550677592205, rel=1e-11)
    assert dp.sinc(0.0) == 1.0
    assert dp.coth_half(2.0) == pytest.approx(1.3130352854993313, rel=1e-13)
    with pytest.raises(ValueError):
        dp.exp_integral_e1(0.0)


def test_discrete_exponent_and_kerr():
    bath = dp.ModeBath([2.0], [0.1])
    cav = dp.CavityParams(1.0)
    th = dp.ThermalParams.from_beta_hbar(1.0)
    e = dp.exponent_discrete(bath, cav, th, 1, 0, 0.5)
    assert e.dephase <= 0.0
    assert dp.kerr_constant_discrete(bath, cav) == pytest.approx(-0.005)


def test_density_matrix_evolution():
    model = dp.SpectralModel(1, 1.0, 1e-3, 1.0)
    bath = dp.discretize(model, 40.0)
    cav = dp.CavityParams(1.0)
    th = dp.ThermalParams.from_beta_hbar(10.0)
    rho0 = dp.FockDensityMatrix.equal_superposition(2, 0, 1)
    rho = dp.evolve_density_matrix(rho0, bath, cav, th, 20.0)
    e = dp.exponent_discrete(bath, cav, th, 0, 1, 20.0)
    assert dp.coherence_magnitude(rho, 0, 1) == pytest.approx(
        0.5 * math.exp(e.dephase), rel=1e-12
    )
    assert rho.min_eigenvalue() > -1e-10
    assert np.allclose(np.diag(rho.entries), np.diag(rho0.entries))


def test_closed_form_matches_quadrature():
    model = dp.SpectralModel(0, 1.0, 1e-3, 1.0)
    cav = dp.CavityParams(1.0)
    ph = dp.phase_closed(model, cav, 1, 0, 10.0)
    q = dp.spectral_integral_quadrature(model, dp.WeightFunction.oscillation(10.0))
    assert ph.osc_phase == pytest.approx(-2.0 * q / math.pi, rel=1e-8)


def test_strip_device_golden_numbers():
    p = dp.StripParams()
    p.rho_m = 1e3
    p.tension_f = 1e-5
    p.width_w = 1e-6
    p.thickness_t = 1e-7
    p.length_l = 0.1
    p.metallized_dl = 1e-5
    p.gap_d = 1e-7
    p.circuit_omega = 2 * math.pi * 5e9
    p.temperature = 0.05
    cut = dp.strip_cutoffs(p)
    assert cut.omega_u / (2 * math.pi) == pytest.approx(1.007e7, rel=1e-2)
    assert dp.strip_mode(2, p).lambda_ == 0.0
    rep = dp.device_dephasing_report(p, 1e-8, 1e-4)
    assert rep.rephasing_time == pytest.approx(6.32e-4, rel=1e-2)
    assert rep.validity.ok


def test_cli_run_from_python(tmp_path):
    config = os.path.join(PRESET_DIR, "generic_ohmic.cfg")
    code, out, err = dp.run_config_file("evolve", config, str(tmp_path))
    assert code == 0, err
    csv = (tmp_path / "evolve.csv").read_text()
    header = csv.splitlines()[0]
    assert header == (
        "t_s,omega_u_t,n,n_prime,free_phase_rad,kerr_phase_rad,osc_phase_rad,"
        "dephase,coherence_magnitude"
    )
