"""Bessel functions J0, J1 and the positive zeros of J1."""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

__all__ = ["bessel_j0", "bessel_j1", "j1_zeros", "BesselZeroTable"]


def _as_checked(x):
    arr = np.asarray(x, dtype=float)
    if np.isnan(arr).any():
        raise ValueError("NaN argument to Bessel function")
    return arr


def _out(arr, scalar):
    return float(arr) if scalar else arr


def bessel_j0(x):
    """J0 at real ``x`` (scalar or array)."""
    arr = _as_checked(x)
    return _out(_sp.j0(arr), arr.ndim == 0)


def bessel_j1(x):
    """J1 at real ``x`` (scalar or array)."""
    arr = _as_checked(x)
    return _out(_sp.j1(arr), arr.ndim == 0)


class BesselZeroTable:
    """First ``len(zeros)`` positive zeros of J1, strictly increasing."""

    order = 1

    def __init__(self, zeros):
        self.zeros = np.asarray(zeros, dtype=float)

    def __len__(self):
        return len(self.zeros)

    def __getitem__(self, i):
        return self.zeros[i]

    def __iter__(self):
        return iter(self.zeros)

    def __repr__(self):
        return f"BesselZeroTable(n={len(self)})"


def _mcmahon_j1(n):
    # asymptotic expansion of j_{1,n}, mu = 4*nu^2 = 4
    beta = (n + 0.25) * np.pi
    b8 = 8.0 * beta
    return beta - 3.0 / b8 + 12.0 / b8**3 - 32.0 * 3.0 * 1179.0 / (15.0 * b8**5)


def j1_zeros(n: int) -> BesselZeroTable:
    """McMahon estimates refined by Newton steps on J1 (J1' = J0 - J1/x)."""
    n = int(n)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return BesselZeroTable(np.empty(0))
    if n > 10**6:
        raise ValueError("n too large (max 1e6)")
    z = _mcmahon_j1(np.arange(1, n + 1, dtype=float))
    for _ in range(8):
        f = _sp.j1(z)
        step = f / (_sp.j0(z) - f / z)
        z = z - step
        if np.max(np.abs(step) / z) < 1e-16:
            break
    return BesselZeroTable(z)
