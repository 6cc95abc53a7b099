import numpy as np
import pytest
from hypothesis import given, strategies as st

from evanescent_dipole.materials import (COPPER, MetalParams, ResponseModel, eps_drude, eps_plasma,
                                         k_factor, model_k_factor, omega_threshold)
from evanescent_dipole.units import C_LIGHT

WP, GAMMA = COPPER.omega_p, COPPER.gamma


def test_copper_defaults():
    assert (COPPER.omega_p, COPPER.gamma) == (1.12e16, 1.38e13)


def test_metal_params_validated():
    with pytest.raises(ValueError):
        MetalParams(omega_p=0.0, gamma=1.0)
    with pytest.raises(ValueError):
        MetalParams(omega_p=1.0, gamma=-1.0)


def test_drude_at_100_rad_s():
    # real/imag parts written out: wp^2 w / (w (w^2 + g^2)) etc.
    w = 100.0
    re = 1.0 - WP**2 / (w**2 + GAMMA**2)
    im = WP**2 * GAMMA / (w * (w**2 + GAMMA**2))
    got = eps_drude(w, COPPER)
    assert got.real == pytest.approx(re, rel=1e-12)
    assert got.imag == pytest.approx(im, rel=1e-12)
    assert got.real == pytest.approx(-6.59e5, rel=1e-3)
    assert got.imag == pytest.approx(9.09e16, rel=1e-3)


def test_drude_without_relaxation_is_plasma():
    metal = MetalParams(WP, 0.0)
    for w in (1.0, 1e10, WP, 3 * WP):
        assert eps_drude(w, metal) == pytest.approx(eps_plasma(w, metal), rel=1e-15, abs=1e-15)
    assert abs(eps_drude(WP, metal)) < 1e-15


def test_plasma_values():
    assert eps_plasma(WP, COPPER) == 0.0
    assert eps_plasma(100.0, COPPER) == pytest.approx(-1.2544e28, rel=1e-12)
    assert eps_plasma(1e30, COPPER) == pytest.approx(1.0, abs=1e-20)


@pytest.mark.parametrize("fn", [eps_drude, eps_plasma])
def test_nonpositive_frequency_rejected(fn):
    with pytest.raises(ValueError):
        fn(0.0, COPPER)
    with pytest.raises(ValueError):
        fn(-5.0, COPPER)


def test_k_factor_examples():
    assert k_factor(3.0, 1.0, 1.0) == 0
    kp = k_factor(100.0, 1.0, eps_plasma(100.0, COPPER))
    assert kp.real == pytest.approx(-WP**2 / C_LIGHT**2, rel=1e-12)
    assert kp.real == pytest.approx(-1.394e11, rel=2e-3)
    kd = k_factor(100.0, 1.0, eps_drude(100.0, COPPER))
    assert abs(kd) == pytest.approx(1.0, rel=0.02)
    with pytest.raises(ValueError):
        k_factor(1.0, 0.0, 2.0)


def test_plasma_k_factor_frequency_independent():
    plasma = ResponseModel.plasma()
    ks = [model_k_factor(plasma, w, 1.0) for w in (1e-3, 2.0, 100.0, 1e9)]
    assert all(k == ks[0] for k in ks)
    generic = [k_factor(w, 1.0, eps_plasma(w, COPPER)) for w in (2.0, 100.0, 1e5)]
    np.testing.assert_allclose(generic, ks[0], rtol=4e-16)


def test_model_k_factor_matches_generic():
    drude = ResponseModel.drude()
    for w in (2.0, 10.0, 100.0):
        assert model_k_factor(drude, w, 1.3) == pytest.approx(k_factor(w, 1.3, eps_drude(w, COPPER)),
                                                              rel=1e-12)


def test_omega_threshold():
    assert omega_threshold(COPPER, 1.0) == pytest.approx(99.0, rel=0.01)
    assert omega_threshold(COPPER, 2.0) == pytest.approx(24.8, rel=0.01)
    assert omega_threshold(MetalParams(WP, 0.0), 1.0) == 0.0
    with pytest.raises(ValueError):
        omega_threshold(COPPER, -1.0)


@given(st.floats(1e-3, 1e18), st.floats(1e-6, 1e16))
def test_drude_passive(w, g):
    assert eps_drude(w, MetalParams(WP, g)).imag > 0


def test_small_relaxation_limit():
    metal = MetalParams(WP, 1e-6 * WP)
    for w in np.geomspace(0.1 * WP, 100 * WP, 50):
        d, p = eps_drude(w, metal), eps_plasma(w, metal)
        assert abs(d - p) < 1e-4 * max(abs(p), 1.0)


def test_low_frequency_k_magnitude():
    drude = ResponseModel.drude()
    for w in (1e-8 * GAMMA, 1e-10 * GAMMA, 1.0):
        approx = WP**2 * w / (GAMMA * (C_LIGHT / 1.0) ** 2)
        assert abs(model_k_factor(drude, w, 1.0)) == pytest.approx(approx, rel=0.01)


def test_response_model_validation():
    with pytest.raises(ValueError):
        ResponseModel("drude")
    with pytest.raises(ValueError):
        ResponseModel("custom")
    with pytest.raises(ValueError):
        ResponseModel("nonlocal")
    assert ResponseModel.custom(lambda w, k: -1.0, "hook").name == "hook"
