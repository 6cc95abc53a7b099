"""Fresnel reflection coefficients of a semi-infinite local medium.

Square roots follow the decaying branch: Re >= 0, and Im >= 0 when the real
part vanishes.  The s-coefficient is evaluated as

    R_s = (q - q_eps)/(q + q_eps) = (eps - 1) k0^2 / (q + q_eps)^2

which is the same number but immune to the cancellation in q - q_eps when
|eps - 1| k0^2 is tiny compared with q^2.
"""

from __future__ import annotations

import numpy as np

from .units import C_LIGHT

DECAYING = "decaying"
OUTGOING = "outgoing"


def branch_sqrt(z):
    """Square root with Re >= 0; on the cut (Re == 0) pick Im >= 0."""
    s = np.sqrt(np.asarray(z, dtype=complex))
    s = np.where(s.real == 0.0, 1j * np.abs(s.imag), s)
    return s if s.ndim else complex(s)


def transverse_q(k_t, k0, eps=1.0, branch: str = DECAYING):
    """(k_t^2 - eps k0^2)^(1/2).

    ``branch="outgoing"`` instead gives Im <= 0 on the propagating band of a
    lossless medium, i.e. exp(-q|z|) = exp(+i k_z |z|): the radiating choice
    for exp(-i omega t).  Only the Fourier-inversion check and the optional
    propagating-band diagnostic use it.
    """
    arg = np.asarray(k_t, dtype=float) ** 2 - complex(eps) * np.asarray(k0, dtype=float) ** 2
    q = branch_sqrt(arg)
    if branch == OUTGOING:
        q = np.where(q.real == 0.0, -1j * np.abs(np.imag(q)), q)
        q = q if np.ndim(q) else complex(q)
    elif branch != DECAYING:
        raise ValueError(f"unknown branch {branch!r}")
    return q


def _check_passive(eps):
    if np.imag(eps) < 0:
        raise ValueError(f"Im(eps) < 0 is unphysical for exp(-i omega t): eps={eps}")


def r_s(omega, k_t, eps, branch: str = DECAYING):
    _check_passive(eps)
    if not omega > 0:
        raise ValueError("omega must be positive")
    eps = complex(eps)
    k0 = omega / C_LIGHT
    q = transverse_q(k_t, k0, 1.0, branch)
    q_eps = transverse_q(k_t, k0, eps)
    den = (q + q_eps) ** 2
    num = (eps - 1.0) * k0 * k0
    # q = q_eps = 0 only for eps = 1 at grazing; treat as no interface
    return np.where(den == 0, -1.0 if eps != 1 else 0.0, num / np.where(den == 0, 1.0, den))[()]


def r_s_fresnel(omega, k_t, eps):
    """Textbook (q - q_eps)/(q + q_eps); kept for cross-checks."""
    _check_passive(eps)
    k0 = omega / C_LIGHT
    q = transverse_q(k_t, k0)
    q_eps = transverse_q(k_t, k0, eps)
    return (q - q_eps) / (q + q_eps)


def r_p(omega, k_t, eps):
    _check_passive(eps)
    if not omega > 0:
        raise ValueError("omega must be positive")
    eps = complex(eps)
    k0 = omega / C_LIGHT
    q = transverse_q(k_t, k0)
    q_eps = transverse_q(k_t, k0, eps)
    return (eps * q - q_eps) / (eps * q + q_eps)


def r_s_scaled(w, K):
    """R_s in terms of w = h q and K = (eps - 1)(omega h / c)^2.

    Equals (w - sqrt(w^2 - K))/(w + sqrt(w^2 - K)), computed as
    K / (w + sqrt(w^2 - K))^2.
    """
    w = np.asarray(w, dtype=float)
    K = complex(K)
    if np.any(w < 0):
        raise ValueError("w must be non-negative")
    if K == 0:
        out = np.zeros(w.shape, dtype=complex)
    else:
        out = K / (w + branch_sqrt(w * w - K)) ** 2
    return out if out.ndim else complex(out)
