"""Gaussian-unit constants and the few SI conversions used for reporting.

Every physics routine in the package works in Gaussian units (cm, s, Oe,
statA, erg/Oe).  SI values only appear when results are written out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = 2.99792458e10  # cm/s
    oersted_to_tesla: float = 1e-4
    # 1 Oe = 1000/(4 pi) A/m
    oersted_to_ampere_per_meter: float = 1e3 / (4.0 * math.pi)
    statampere_to_ampere: float = 1.0 / 2.99792458e9


CONSTANTS = PhysicalConstants()
C_LIGHT = CONSTANTS.c

FIELD_UNITS = ("Oe", "mOe", "T", "A_per_m")
_FIELD_FACTORS = {
    "Oe": 1.0,
    "mOe": 1e3,
    "T": CONSTANTS.oersted_to_tesla,
    "A_per_m": CONSTANTS.oersted_to_ampere_per_meter,
}
_FIELD_ALIASES = {"A/m": "A_per_m", "oe": "Oe", "moe": "mOe", "t": "T"}


def _check_finite(value):
    if isinstance(value, complex):
        ok = math.isfinite(value.real) and math.isfinite(value.imag)
    else:
        ok = math.isfinite(value)
    if not ok:
        raise ValueError(f"non-finite value: {value!r}")


def normalize_field_unit(unit: str) -> str:
    unit = _FIELD_ALIASES.get(unit, unit)
    if unit not in _FIELD_FACTORS:
        raise ValueError(f"unknown field unit {unit!r}; expected one of {FIELD_UNITS}")
    return unit


def field_factor(unit: str) -> float:
    """Multiplier taking a field in Oe to ``unit``."""
    return _FIELD_FACTORS[normalize_field_unit(unit)]


def convert_field(value, target: str = "Oe"):
    """Convert a field amplitude given in oersted to ``target``.

    Works for real or complex phasors; the conversion is a plain scale factor.
    """
    _check_finite(value)
    return value * field_factor(target)


def convert_current(value: float, src: str = "statA", dst: str = "A") -> float:
    _check_finite(value)
    to_amp = {"A": 1.0, "statA": CONSTANTS.statampere_to_ampere}
    if src not in to_amp or dst not in to_amp:
        raise ValueError(f"unknown current unit in {src!r} -> {dst!r}")
    if src == dst:
        return value
    if src == "A":
        return value / CONSTANTS.statampere_to_ampere
    return value * CONSTANTS.statampere_to_ampere


def k0(omega: float) -> float:
    """Vacuum wave number omega/c in 1/cm."""
    return omega / C_LIGHT
