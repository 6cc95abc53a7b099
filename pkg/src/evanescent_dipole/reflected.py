"""Field of the dipole above a thick plate, from its image expansion.

All integrals run in dimensionless variables: u = k_t h, w = q h, u0 = k0 h,
rho = r_t / h.  The integration variable is w rather than u, which removes
the 1/q endpoint singularity of the vertical component exactly
(du / w = dw / u) and makes the damping exp(-c w) explicit.  Panels end at
the zeros of J1(u rho), mapped to w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import special as _sp

from .dipole import DipoleConfig, h_free
from .materials import CUSTOM, DRUDE, IDEAL, PLASMA, ResponseModel, model_k_factor
from .quadrature import Integral, QuadratureConfig, QuadratureError, integrate
from .reflection import branch_sqrt, r_s_scaled, transverse_q
from .special import j1_zeros
from .units import C_LIGHT

# |J1(t)| <= this for real t
_J1_MAX = 0.5818652

SMALL_RHO = 1e-6


@dataclass
class FieldResult:
    value: complex  # Oe
    est_error: float  # Oe
    segments_used: int
    model: str
    converged: bool = True


class FieldConvergenceError(QuadratureError):
    """Carries the partial FieldResult in ``partial``."""


def model_reflection(model: ResponseModel, omega: float, k_t):
    """R_s(omega, k_t) of ``model`` for real k_t >= k0 (arrays accepted)."""
    k_t = np.asarray(k_t, dtype=float)
    if model.tag == IDEAL:
        out = np.full(k_t.shape, -1.0 + 0j)
    elif model.tag == CUSTOM:
        out = _call_hook(model.hook, omega, k_t)
    else:
        h = 1.0  # any length scale works; K and w scale together
        K = model_k_factor(model, omega, h)
        w = np.real(transverse_q(k_t, omega / C_LIGHT)) * h
        out = r_s_scaled(w, K)
    out = np.asarray(out, dtype=complex)
    return out if out.ndim else complex(out)


def _call_hook(hook, omega, k_t):
    k_t = np.asarray(k_t, dtype=float)
    try:
        out = np.asarray(hook(omega, k_t), dtype=complex)
        if out.shape == k_t.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([complex(hook(omega, float(k))) for k in k_t.ravel()]).reshape(k_t.shape)


def _scaled_reflection(model: ResponseModel, dipole: DipoleConfig):
    """R_s as a function of w = h q for the given dipole frequency and height."""
    h, omega, u0 = dipole.h, dipole.omega, dipole.k0 * dipole.h
    if model.tag == IDEAL:
        return lambda w: np.full(np.shape(w), -1.0 + 0j)
    if model.tag in (DRUDE, PLASMA):
        K = model_k_factor(model, omega, h)
        return lambda w: _r_from_K(w, K)
    # u^2 = w^2 + u0^2 also holds on the propagating band, where w is imaginary
    return lambda w: _call_hook(model.hook, omega, np.sqrt(np.real(np.asarray(w) ** 2) + u0 * u0) / h)


def _r_from_K(w, K):
    # same as r_s_scaled but tolerates the complex w of the propagating band
    if K == 0:
        return np.zeros(np.shape(w), dtype=complex)
    w = np.asarray(w)
    return K / (w + branch_sqrt(w * w - K)) ** 2


def _poly_exp_tail(coeffs, c, W):
    """Integral of sum_n coeffs[n] w^n exp(-c w) over [W, inf), coeffs >= 0."""
    total = 0.0
    for n, a in enumerate(coeffs):
        if a == 0:
            continue
        # int_W^inf w^n e^{-cw} dw = e^{-cW} sum_k n!/k! W^k / c^{n-k+1}
        s = sum(math.factorial(n) / math.factorial(k) * W**k / c ** (n - k + 1) for k in range(n + 1))
        total += a * s
    return total * math.exp(-c * W)


def _breakpoints(rho: float, u0: float, c: float):
    """w-coordinates of J1(u rho) zeros, with panels no wider than 4/c."""
    max_width = 4.0 / c
    w = 0.0
    yield w
    if rho < SMALL_RHO:
        while True:
            w += max_width
            yield w
    n = 64
    zeros = j1_zeros(n).zeros
    i = 0
    while True:
        if i == len(zeros):
            n *= 2
            zeros = j1_zeros(n).zeros
        u = zeros[i] / rho
        wz = math.sqrt(max(u * u - u0 * u0, 0.0))
        if wz <= w:
            i += 1
            continue
        if wz - w > max_width:
            w += max_width
        else:
            w = wz
            i += 1
        yield w


def _j1_over_rho(t, rho):
    """J1(t rho)/rho, switching to the Taylor kernel t/2 for tiny rho."""
    if rho < SMALL_RHO:
        return 0.5 * t
    return _sp.j1(t * rho) / rho


def _propagating_band(kernel, R, u0, cfg):
    """Integral over u in [0, u0] with outgoing q = -i sqrt(u0^2 - u^2).

    ``kernel(u, w)`` must already include the Jacobian factor du/dtheta
    for u = u0 sin(theta).
    """
    if u0 == 0:
        return Integral(0j, 0.0, 0, 0)

    def f(theta):
        u = u0 * np.sin(theta)
        w = -1j * u0 * np.cos(theta)
        return kernel(u, w) * R(w)

    return integrate(f, np.linspace(0.0, 0.5 * math.pi, 5), cfg)


def lateral_integral(rho, u0, R, cfg, *, propagating=False):
    """Integral of u^2 J1(u rho)/rho R_s exp(-2w) du over u >= u0.

    R takes w.  Dimensionless; the lateral field is (m0/h^3)(x/h) times this.
    """
    c = 2.0

    def f(w):
        u = np.sqrt(w * w + u0 * u0)
        return u * w * _j1_over_rho(u, rho) * R(w) * np.exp(-c * w)

    # |J1(u rho)/rho| <= min(u/2, J1max/rho), u <= w + u0
    def tail(W):
        bound_small = 0.5 * _poly_exp_tail([0.0, u0 * u0, 2.0 * u0, 1.0], c, W)
        if rho < SMALL_RHO:
            return bound_small
        bound_osc = _J1_MAX / rho * _poly_exp_tail([0.0, u0, 1.0], c, W)
        return min(bound_small, bound_osc)

    res = integrate(f, _breakpoints(rho, u0, c), cfg, tail)
    if propagating:
        band = _propagating_band(
            # du = u0 cos(theta) dtheta = i w dtheta
            lambda u, w: u * u * _j1_over_rho(u, rho) * np.exp(-c * w) * 1j * w,
            R, u0, cfg,
        )
        res = Integral(res.value + band.value, res.error + band.error, res.segments, res.evaluations)
    return res


def bessel_laplace_moment(a: float, p: float, cfg: QuadratureConfig = QuadratureConfig()) -> Integral:
    """Integral of k^2 J1(k a) exp(-p k) dk over k >= 0, through the lateral engine.

    With k = 2u/p this is (2/p)^3 rho times the lateral integral at
    rho = 2a/p, u0 = 0 and R_s = 1.
    """
    if not (a > 0 and p > 0):
        raise ValueError("a and p must be positive")
    rho = 2.0 * a / p
    res = lateral_integral(rho, 0.0, lambda w: np.ones(np.shape(w), dtype=complex), cfg)
    scale = (2.0 / p) ** 3 * rho
    return Integral(res.value * scale, res.error * scale, res.segments, res.evaluations)


def vertical_integral(rho, u0, c, R, cfg, *, propagating=False):
    """Integral of u^3/w J0(u rho) R_s exp(-c w) du over u >= u0."""

    def f(w):
        u = np.sqrt(w * w + u0 * u0)
        return u * u * _sp.j0(u * rho) * R(w) * np.exp(-c * w)

    def tail(W):
        # |J0| <= 1, u^2 <= (w + u0)^2
        return _poly_exp_tail([u0 * u0, 2.0 * u0, 1.0], c, W)

    res = integrate(f, _breakpoints(rho, u0, c), cfg, tail)
    if propagating:
        # u^3/q du with q = -i v, du = v dtheta (v = u0 cos theta): i u^3 dtheta
        band = _propagating_band(lambda u, w: 1j * u**3 * _sp.j0(u * rho) * np.exp(-c * w), R, u0, cfg)
        res = Integral(res.value + band.value, res.error + band.error, res.segments, res.evaluations)
    return res


def _wrap(scale, integral_fn, model):
    try:
        res = integral_fn()
    except QuadratureError as exc:
        p = exc.partial
        partial = None
        if p is not None:
            partial = FieldResult(scale * p.value, abs(scale) * p.error, p.segments, model.name, False)
        raise FieldConvergenceError(str(exc), partial) from exc
    return FieldResult(scale * res.value, abs(scale) * res.error, res.segments, model.name)


def h_lateral_reflected(x, y, dipole: DipoleConfig, model: ResponseModel,
                        cfg: QuadratureConfig = QuadratureConfig(), *, propagating=False):
    """(H_x, H_y) at height z = h, where only the image contributes."""
    r_t = math.hypot(x, y)
    if r_t == 0.0:
        zero = FieldResult(0j, 0.0, 0, model.name)
        return zero, replace(zero)
    h = dipole.h
    rho = r_t / h
    u0 = dipole.k0 * h
    R = _scaled_reflection(model, dipole)
    base = _wrap(dipole.m0 / h**3, lambda: lateral_integral(rho, u0, R, cfg, propagating=propagating),
                 model)
    # x_alpha / r_t * rho = x_alpha / h
    hx = replace(base, value=base.value * (x / h), est_error=base.est_error * abs(x / h))
    hy = replace(base, value=base.value * (y / h), est_error=base.est_error * abs(y / h))
    return hx, hy


def h_x_reflected(x, y, dipole: DipoleConfig, model: ResponseModel,
                  cfg: QuadratureConfig = QuadratureConfig(), *, propagating=False) -> FieldResult:
    return h_lateral_reflected(x, y, dipole, model, cfg, propagating=propagating)[0]


def h_y_reflected(x, y, dipole, model, cfg=QuadratureConfig(), *, propagating=False) -> FieldResult:
    return h_lateral_reflected(x, y, dipole, model, cfg, propagating=propagating)[1]


def h_z_reflected_part(x, y, z, dipole: DipoleConfig, model: ResponseModel,
                       cfg: QuadratureConfig = QuadratureConfig(), *, propagating=False) -> FieldResult:
    """Image contribution to H_z at (x, y, z)."""
    if not z > 0:
        raise ValueError("field point must be above the plate (z > 0)")
    h = dipole.h
    rho = math.hypot(x, y) / h
    c = (z + h) / h
    R = _scaled_reflection(model, dipole)
    return _wrap(dipole.m0 / h**3,
                 lambda: vertical_integral(rho, dipole.k0 * h, c, R, cfg, propagating=propagating),
                 model)


def h_z_above_plate(x, y, z, dipole: DipoleConfig, model: ResponseModel,
                    cfg: QuadratureConfig = QuadratureConfig(), *, propagating=False) -> FieldResult:
    """Total H_z: image integral plus the closed-form direct dipole term."""
    image = h_z_reflected_part(x, y, z, dipole, model, cfg, propagating=propagating)
    direct = h_free(dipole.omega, dipole.m0, (x, y, z - dipole.h)).Hz
    return replace(image, value=image.value + direct)


def h_fourier_above_plate(omega, k_t_vec, z, dipole: DipoleConfig, model: ResponseModel) -> np.ndarray:
    """Plane-wave amplitudes (H_x, H_y, H_z) of the total field at height z.

    ``omega`` must match ``dipole.omega``; it is accepted separately to mirror
    the free-space transform.  sign(z - h) is taken as 0 at z = h.
    """
    if not z > 0:
        raise ValueError("z must be above the plate")
    if not math.isclose(omega, dipole.omega):
        raise ValueError("omega differs from dipole.omega")
    kx = np.asarray(k_t_vec[0], dtype=float)
    ky = np.asarray(k_t_vec[1], dtype=float)
    k_t = np.hypot(kx, ky)
    q = transverse_q(k_t, omega / C_LIGHT)
    R = model_reflection(model, omega, k_t)
    h, m0 = dipole.h, dipole.m0
    image = R * np.exp(-q * (z + h))
    direct = np.exp(-q * abs(z - h))
    lateral = image + np.sign(z - h) * direct
    hx = -2j * math.pi * m0 * kx * lateral
    hy = -2j * math.pi * m0 * ky * lateral
    with np.errstate(divide="ignore", invalid="ignore"):
        hz = 2.0 * math.pi * m0 * k_t**2 / q * (image + direct)
    hz = np.where(k_t == 0, 0.0, hz)
    return np.array([hx, hy, hz])


def propagating_suppression_factor(omega: float, h: float) -> float:
    """1/(k0 h)^3: evanescent over propagating weight in the image integrals."""
    if not (omega > 0 and h > 0):
        raise ValueError("omega and h must be positive")
    return (C_LIGHT / (omega * h)) ** 3
