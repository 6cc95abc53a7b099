"""Acceptance suite: one check per numbered criterion, each at its stated tolerance.

Every check records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and also with ``-s`` as each test finishes.
"""

import math

import numpy as np
import pytest

from evanescent_dipole.dipole import DEFAULT_COIL, DipoleConfig, coil_moment, h_free, h_x_ideal_closed
from evanescent_dipole.materials import COPPER, ResponseModel, k_factor, omega_threshold
from evanescent_dipole.quadrature import QuadratureConfig
from evanescent_dipole.reflected import bessel_laplace_moment, h_lateral_reflected, h_x_reflected
from evanescent_dipole.reflection import r_s, r_s_scaled, transverse_q
from evanescent_dipole.sweep import discrimination_ratio
from evanescent_dipole.units import C_LIGHT, convert_field

from oracles import invert_fourier_2d

RESULTS = {}
CFG = QuadratureConfig(rel_tol=1e-9)
M0_STATED = 3.14e-2
FREQS = (2.0, 10.0, 100.0)


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_01_coil_moment():
    m0 = coil_moment(DEFAULT_COIL)
    rel = abs(m0 / 3.14e-2 - 1)
    record(1, rel <= 2e-3, f"m0 = {m0:.6g} erg/Oe, rel. deviation {rel:.2e} (limit 2e-3)")


def test_criterion_02_ideal_anchor():
    dip = DipoleConfig(M0_STATED, 1.0, 100.0)
    res = h_x_reflected(1.0, 0.0, dip, ResponseModel.ideal(), CFG)
    mOe = abs(convert_field(res.value, "mOe"))
    closed = h_x_ideal_closed(M0_STATED, 1.0, 1.0)
    rel_anchor = abs(mOe / 3.36 - 1)
    rel_closed = abs(abs(res.value) / closed - 1)
    record(2, rel_anchor <= 5e-3 and rel_closed <= 1e-9,
           f"|Hx| = {mOe:.5f} mOe (vs 3.36: {rel_anchor:.2e}, limit 5e-3); "
           f"vs closed form {rel_closed:.1e} (limit 1e-9)")


def test_criterion_03_hankel_laplace():
    worst = 0.0
    for ratio in np.geomspace(0.1, 10.0, 5):
        for p in np.geomspace(0.2, 5.0, 5):
            a = ratio * p
            got = bessel_laplace_moment(a, p, QuadratureConfig(rel_tol=1e-10)).value
            want = 3 * p * a / (p * p + a * a) ** 2.5
            worst = max(worst, abs(got - want) / want)
    record(3, worst <= 1e-8, f"worst rel. error over 5x5 (a/p in 0.1..10) grid {worst:.2e} (limit 1e-8)")


def test_criterion_04_threshold():
    om = omega_threshold(COPPER, 1.0)
    rel = abs(om / 100 - 1)
    record(4, rel <= 0.05, f"Omega = {om:.4g} rad/s, rel. deviation {rel:.2e} (limit 0.05)")


def test_criterion_05_drude_bound():
    dip = DipoleConfig(coil_moment(DEFAULT_COIL), 1.0, 100.0)
    drude = ResponseModel.drude()
    xs = np.linspace(1.0, 2.0, 21)
    vals = [abs(convert_field(h_x_reflected(x, 0.0, dip, drude, CFG).value.real, "mOe")) for x in xs]
    peak, at_one = max(vals), vals[0]
    ok = peak <= 0.336 and 0.15 <= at_one <= 0.336
    record(5, ok, f"max |Re Hx| on x in [1,2] = {peak:.4f} mOe (<= 0.336); at x=1 {at_one:.4f} mOe "
                  f"(in [0.15, 0.336])")


def test_criterion_06_ratios():
    dip = DipoleConfig(coil_moment(DEFAULT_COIL), 1.0, 10.0)
    r10 = discrimination_ratio(1.0, 10.0, dip, CFG)
    r100 = discrimination_ratio(1.0, 100.0, dip, CFG)
    ok = abs(r10 / 280 - 1) <= 0.1 and abs(r100 / 14 - 1) <= 0.1
    record(6, ok, f"plasma/Drude at omega=10: {r10:.1f} (280 +- 10%), omega=100: {r100:.2f} (14 +- 10%)")


def test_criterion_07_plasma_properties():
    plasma = ResponseModel.plasma()
    m0 = coil_moment(DEFAULT_COIL)
    res = {om: h_x_reflected(1.0, 0.0, DipoleConfig(m0, 1.0, om), plasma, CFG) for om in FREQS}
    im_ok = all(abs(r.value.imag) <= max(r.est_error, 1e-9 * abs(r.value.real)) for r in res.values())
    drift = abs(res[2.0].value.real / res[100.0].value.real - 1)
    worst_im = max(abs(r.value.imag) for r in res.values())
    record(7, im_ok and drift <= 1e-6,
           f"max |Im Hx| = {worst_im:.1e} Oe; Re Hx(omega=2) vs (omega=100) rel. {drift:.1e} (limit 1e-6)")


def test_criterion_08_drude_im_dominance():
    drude = ResponseModel.drude()
    m0 = coil_moment(DEFAULT_COIL)
    worst = math.inf
    for om in FREQS:
        for x in (1.0, 1.5, 2.0):
            v = h_x_reflected(x, 0.0, DipoleConfig(m0, 1.0, om), drude, CFG).value
            worst = min(worst, abs(v.imag) / abs(v.real))
    record(8, worst > 1.0, f"min |Im Hx|/|Re Hx| over 9 points = {worst:.3f} (must exceed 1)")


def test_criterion_09_fourier_consistency():
    omega = 0.1 * C_LIGHT
    worst = 0.0
    for point in [(1.0, 1.0, 1.0), (0.6, -0.4, 0.8), (-1.1, 0.5, -0.9)]:
        got = invert_fourier_2d(omega, 1.0, point)
        want = h_free(omega, 1.0, point).as_array()
        worst = max(worst, float(np.max(np.abs(got - want) / np.abs(want))))
    record(9, worst <= 1e-6, f"worst componentwise rel. error at 3 points {worst:.2e} (limit 1e-6)")


def test_criterion_10_symmetry_and_passivity():
    rng = np.random.default_rng(10)
    dip = DipoleConfig(coil_moment(DEFAULT_COIL), 1.0, 10.0)
    drude = ResponseModel.drude()
    sym = 0.0
    for x, y in rng.uniform(-2.5, 2.5, (6, 2)):
        hx, _ = h_lateral_reflected(x, y, dip, drude, CFG)
        hx_m, _ = h_lateral_reflected(-x, y, dip, drude, CFG)
        _, hy_t = h_lateral_reflected(y, x, dip, drude, CFG)
        tol = hx.est_error + hx_m.est_error + hy_t.est_error
        sym = max(sym, (abs(hx.value + hx_m.value) - tol) / abs(hx.value),
                  (abs(hx.value - hy_t.value) - tol) / abs(hx.value))
    sym_ok = sym <= 0.0

    n = 10_000
    eps = 10 ** rng.uniform(-2, 16, n) * np.exp(1j * rng.uniform(0, math.pi, n))
    omega = 10 ** rng.uniform(0, 12, n)
    k_t = 10 ** rng.uniform(1e-6, 6, n) * omega / C_LIGHT
    h = 10 ** rng.uniform(-3, 2, n)
    worst_mag, worst_eq = 0.0, 0.0
    for e, o, k, hh in zip(eps, omega, k_t, h):
        direct = r_s(o, k, e)
        w = hh * transverse_q(k, o / C_LIGHT).real
        scaled = r_s_scaled(w, k_factor(o, hh, e))
        worst_mag = max(worst_mag, abs(direct))
        worst_eq = max(worst_eq, abs(direct - scaled) / abs(scaled))
    ok = sym_ok and worst_mag <= 1.0 and worst_eq <= 1e-12
    record(10, ok, f"symmetry excess {max(sym, 0.0):.1e}; max |R_s| over 1e4 samples {worst_mag:.15f}; "
                   f"scaled vs direct {worst_eq:.1e} (limit 1e-12)")
