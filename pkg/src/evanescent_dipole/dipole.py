"""Fields of an oscillating z-directed point magnetic dipole in vacuum.

Gaussian units, phasors with implied exp(-i omega t).  The dipole sits at the
origin for the free-space routines.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .reflection import DECAYING, transverse_q
from .units import C_LIGHT


@dataclass(frozen=True)
class CoilSpec:
    N: int  # loops
    I0: float  # statA
    R: float  # cm

    def __post_init__(self):
        if self.N < 1 or not self.I0 > 0 or not self.R > 0:
            raise ValueError(f"invalid coil {self}")


DEFAULT_COIL = CoilSpec(N=10, I0=3e9, R=0.1)


def coil_moment(spec: CoilSpec) -> float:
    """Magnetic moment pi N I0 R^2 / c of a flat coil, erg/Oe."""
    return math.pi * spec.N * spec.I0 * spec.R**2 / C_LIGHT


@dataclass(frozen=True)
class DipoleConfig:
    m0: float  # erg/Oe
    h: float  # cm, height above the plate
    omega: float  # rad/s

    def __post_init__(self):
        if not (self.m0 > 0 and self.h > 0 and self.omega > 0):
            raise ValueError(f"m0, h and omega must be positive: {self}")
        if self.k0 * self.h > 1e-3:
            warnings.warn(
                f"k0*h = {self.k0 * self.h:.3g} is not small; propagating waves "
                "are no longer negligible",
                stacklevel=2,
            )

    @property
    def k0(self) -> float:
        return self.omega / C_LIGHT


@dataclass(frozen=True)
class FieldVector:
    Hx: complex
    Hy: complex
    Hz: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.Hx, self.Hy, self.Hz], dtype=complex)

    def __iter__(self):
        return iter((self.Hx, self.Hy, self.Hz))


def _radius(point):
    x, y, z = (float(v) for v in point)
    r = math.sqrt(x * x + y * y + z * z)
    if r == 0.0:
        raise ValueError("field is singular at the dipole position")
    return x, y, z, r


def h_free(omega: float, m0: float, point) -> FieldVector:
    x, y, z, r = _radius(point)
    k0 = omega / C_LIGHT
    phase = complex(math.cos(k0 * r), math.sin(k0 * r))
    a = k0 * k0 / r + 3j * k0 / r**2 - 3.0 / r**3
    b = k0 * k0 / r + 1j * k0 / r**2 - 1.0 / r**3
    lateral = -m0 * z / r**2 * a * phase
    hz = m0 * (b - z * z / r**2 * a) * phase
    return FieldVector(lateral * x, lateral * y, hz)


def e_free(omega: float, m0: float, point) -> np.ndarray:
    """Electric field (statV/cm); it points along (y, -x, 0)."""
    x, y, z, r = _radius(point)
    k0 = omega / C_LIGHT
    phase = complex(math.cos(k0 * r), math.sin(k0 * r))
    amp = 1j * m0 * k0 * (1j * k0 / r**2 - 1.0 / r**3) * phase
    return np.array([amp * y, -amp * x, 0.0], dtype=complex)


def h_fourier_free(omega, m0, k_t_vec, z, branch=DECAYING) -> np.ndarray:
    """2D Fourier transform of ``h_free`` over the plane at height ``z``.

    ``k_t_vec`` is ``(k_x, k_y)``; arrays broadcast and the result has a
    leading axis of length 3.  ``branch`` picks the square root of
    k_t^2 - k0^2 on the propagating band (see ``transverse_q``).
    """
    if z == 0:
        raise ValueError("z must be nonzero")
    kx = np.asarray(k_t_vec[0], dtype=float)
    ky = np.asarray(k_t_vec[1], dtype=float)
    kt2 = kx * kx + ky * ky
    q = transverse_q(np.sqrt(kt2), omega / C_LIGHT, 1.0, branch)
    decay = np.exp(-q * abs(z))
    s = math.copysign(1.0, z)
    hx = -2j * math.pi * m0 * kx * s * decay
    hy = -2j * math.pi * m0 * ky * s * decay
    with np.errstate(divide="ignore", invalid="ignore"):
        hz = 2.0 * math.pi * m0 * kt2 / q * decay
    hz = np.where(kt2 == 0, 0.0, hz)
    if np.any(~np.isfinite(hz)):
        raise ValueError("H_z transform is singular at k_t = k0")
    return np.array([hx, hy, hz])


def h_x_ideal_closed(m0: float, h: float, x: float) -> float:
    """Static lateral field at height h over an ideal conductor.

    6 m0 x h / (x^2 + 4 h^2)^(5/2); the field from the integral
    representation carries the opposite sign.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    return 6.0 * m0 * x * h / (x * x + 4.0 * h * h) ** 2.5
