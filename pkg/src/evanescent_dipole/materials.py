"""Local dielectric models of the plate metal and the scaled response K(omega).

Time dependence is exp(-i omega t) throughout, so absorbing media have
Im(eps) > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .units import C_LIGHT

DRUDE = "drude"
PLASMA = "plasma"
IDEAL = "ideal"
CUSTOM = "custom"
MODEL_TAGS = (DRUDE, PLASMA, IDEAL, CUSTOM)


@dataclass(frozen=True)
class MetalParams:
    omega_p: float  # rad/s
    gamma: float  # rad/s
    name: str = "metal"

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ValueError(f"omega_p must be positive, got {self.omega_p}")
        if not self.gamma >= 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")


COPPER = MetalParams(omega_p=1.12e16, gamma=1.38e13, name="copper")


# (omega, k_t) -> R_s, both in Gaussian units (rad/s, 1/cm)
ReflectionHook = Callable[[float, float], complex]


@dataclass(frozen=True)
class ResponseModel:
    """Which reflection model the plate follows.

    ``drude`` and ``plasma`` need ``metal``; ``ideal`` means R_s = -1
    everywhere; ``custom`` calls ``hook(omega, k_t)`` for R_s directly, which
    is the entry point for nonlocal models.
    """

    tag: str
    metal: Optional[MetalParams] = None
    hook: Optional[ReflectionHook] = None
    label: Optional[str] = None

    def __post_init__(self):
        if self.tag not in MODEL_TAGS:
            raise ValueError(f"unknown model tag {self.tag!r}")
        if self.tag in (DRUDE, PLASMA) and self.metal is None:
            raise ValueError(f"{self.tag} model needs MetalParams")
        if self.tag == CUSTOM and self.hook is None:
            raise ValueError("custom model needs a reflection hook")

    @classmethod
    def drude(cls, metal: MetalParams = COPPER):
        return cls(DRUDE, metal)

    @classmethod
    def plasma(cls, metal: MetalParams = COPPER):
        return cls(PLASMA, metal)

    @classmethod
    def ideal(cls):
        return cls(IDEAL)

    @classmethod
    def custom(cls, hook: ReflectionHook, label: str = "custom"):
        return cls(CUSTOM, hook=hook, label=label)

    @property
    def name(self) -> str:
        return self.label or self.tag

    def permittivity(self, omega: float) -> complex:
        if self.tag == DRUDE:
            return eps_drude(omega, self.metal)
        if self.tag == PLASMA:
            return complex(eps_plasma(omega, self.metal))
        raise ValueError(f"model {self.tag!r} has no local permittivity")


def _check_omega(omega):
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")


def _check_h(h):
    if not h > 0:
        raise ValueError(f"h must be positive, got {h}")


def eps_drude(omega: float, metal: MetalParams) -> complex:
    _check_omega(omega)
    return 1.0 - metal.omega_p**2 / (omega * (omega + 1j * metal.gamma))


def eps_plasma(omega: float, metal: MetalParams) -> float:
    _check_omega(omega)
    return 1.0 - (metal.omega_p / omega) ** 2


def omega_h(h: float) -> float:
    _check_h(h)
    return C_LIGHT / h


def k_factor(omega: float, h: float, eps: complex) -> complex:
    """K = (eps - 1) omega^2 / omega_h^2 with omega_h = c/h."""
    _check_omega(omega)
    _check_h(h)
    return (complex(eps) - 1.0) * (omega * h / C_LIGHT) ** 2


def model_k_factor(model: ResponseModel, omega: float, h: float) -> complex:
    """K(omega) for a local model.

    For the plasma model (eps - 1) omega^2 = -omega_p^2 exactly, so it is
    evaluated in that form and carries no omega dependence at all.
    """
    _check_omega(omega)
    _check_h(h)
    if model.tag == PLASMA:
        return complex(-((model.metal.omega_p * h / C_LIGHT) ** 2))
    if model.tag == DRUDE:
        m = model.metal
        # (eps - 1) omega^2 = -omega_p^2 omega / (omega + i gamma)
        return -((m.omega_p * h / C_LIGHT) ** 2) * omega / (omega + 1j * m.gamma)
    raise ValueError(f"model {model.tag!r} has no K factor")


def omega_threshold(metal: MetalParams, h: float) -> float:
    """Frequency below which Drude reflection of evanescent waves collapses."""
    return metal.gamma * omega_h(h) ** 2 / metal.omega_p**2
