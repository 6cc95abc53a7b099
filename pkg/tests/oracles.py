"""Independent reference computations shared by the test modules."""

import math

import numpy as np
from scipy import integrate

from evanescent_dipole.dipole import h_fourier_free
from evanescent_dipole.reflection import OUTGOING
from evanescent_dipole.units import C_LIGHT


def invert_fourier_2d(omega, m0, point, n_phi=160, decay_cut=45.0):
    """(2 pi)^-2 times the k-plane integral of exp(i k.r) H(k, z), done numerically.

    Radial variable: k = k0 sin(t) on the propagating disc and k = k0 cosh(s)
    outside it, which absorbs the 1/q edge singularity of H_z.  The angle is
    done by the trapezoid rule (spectrally accurate for periodic integrands).
    The radiating branch of q is used inside the disc.
    """
    x, y, z = point
    k0 = omega / C_LIGHT
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    cos_p, sin_p = np.cos(phi), np.sin(phi)

    def ring(k):
        kx, ky = k * cos_p, k * sin_p
        spec = h_fourier_free(omega, m0, (kx, ky), z, branch=OUTGOING)
        return (spec * np.exp(1j * (kx * x + ky * y))).mean(axis=1) * 2.0 * np.pi

    # the Jacobians cancel the 1/q of H_z at the disc edge; quad never
    # evaluates the endpoints themselves
    def propagating(t, comp):
        k = k0 * math.sin(t)
        return k * ring(k)[comp] * k0 * math.cos(t)

    def evanescent(s, comp):
        k = k0 * math.cosh(s)
        return k * ring(k)[comp] * k0 * math.sinh(s)

    s_max = math.acosh(math.hypot(decay_cut / abs(z), k0) / k0)
    out = []
    for comp in range(3):
        inner = integrate.quad(lambda t: propagating(t, comp), 0.0, 0.5 * math.pi,
                               complex_func=True, epsabs=1e-12, epsrel=1e-10, limit=200)[0]
        outer = integrate.quad(lambda s: evanescent(s, comp), 0.0, s_max,
                               complex_func=True, epsabs=1e-12, epsrel=1e-10, limit=500)[0]
        out.append((inner + outer) / (2.0 * np.pi) ** 2)
    return np.array(out)
