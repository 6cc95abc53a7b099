"""Parameter sweeps, scenario reports and CSV/JSON emission."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Dict, List, Optional, Sequence

import numpy as np

from .dipole import DEFAULT_COIL, CoilSpec, DipoleConfig, coil_moment
from .materials import (COPPER, DRUDE, PLASMA, MetalParams, ResponseModel, model_k_factor, omega_h,
                        omega_threshold)
from .quadrature import QuadratureConfig
from .reflected import FieldConvergenceError, h_x_reflected, propagating_suppression_factor
from .units import C_LIGHT, field_factor, normalize_field_unit

log = logging.getLogger(__name__)

CSV_HEADER = ["model", "omega_rad_s", "x_cm", "h_cm", "re_Hx", "im_Hx", "abs_re_Hx", "unit",
              "est_error", "segments"]

SEPARATION = "separation_x"
FREQUENCY = "frequency"

# reconstructed figure axes (the figures give no numeric ranges)
PRESET_X_GRID = tuple(np.round(np.linspace(1.0, 2.5, 16), 12))
PRESET_FREQ_GRID = tuple(np.logspace(0.0, 2.0, 21))
SCENARIO_FREQUENCIES = (2.0, 10.0, 100.0)


@dataclass
class SweepSpec:
    variable: str
    grid: Sequence[float]
    m0: float
    h: float = 1.0
    omega: float = 100.0  # used when sweeping separation
    x: float = 1.0  # used when sweeping frequency
    models: Sequence[ResponseModel] = field(default_factory=lambda: [ResponseModel.plasma()])
    output_units: str = "Oe"

    def __post_init__(self):
        if self.variable not in (SEPARATION, FREQUENCY):
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        grid = [float(g) for g in self.grid]
        if not grid:
            raise ValueError("sweep grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("sweep grid must be strictly increasing")
        self.grid = grid
        self.output_units = normalize_field_unit(self.output_units)
        if not self.models:
            raise ValueError("no models in sweep")

    def points(self):
        """(model index, omega, x) for every row, in output order."""
        for i, _ in enumerate(self.models):
            for g in self.grid:
                if self.variable == SEPARATION:
                    yield i, self.omega, g
                else:
                    yield i, g, self.x


@dataclass
class ResultRow:
    model: str
    omega_rad_s: float
    x_cm: float
    h_cm: float
    re_Hx: float
    im_Hx: float
    abs_re_Hx: float
    unit: str
    est_error: float
    segments: int

    @property
    def converged(self) -> bool:
        return math.isfinite(self.est_error)


def _row(model, omega, x, h, result, unit, converged=True) -> ResultRow:
    f = field_factor(unit)
    if converged:
        re, im, err = result.value.real * f, result.value.imag * f, result.est_error * f
    else:
        re = im = math.nan
        err = math.inf
    return ResultRow(model.name, float(omega), float(x), float(h), re, im, abs(re), unit, err,
                     int(result.segments_used))


def evaluate_point(model: ResponseModel, omega: float, x: float, m0: float, h: float,
                   cfg: QuadratureConfig, unit: str = "Oe") -> ResultRow:
    dipole = DipoleConfig(m0=m0, h=h, omega=omega)
    try:
        res = h_x_reflected(x, 0.0, dipole, model, cfg)
    except FieldConvergenceError as exc:
        log.warning("no convergence for %s at omega=%g x=%g: %s (partial %s)",
                    model.name, omega, x, exc, exc.partial)
        return _row(model, omega, x, h, exc.partial, unit, converged=False)
    return _row(model, omega, x, h, res, unit)


def run_sweep(spec: SweepSpec, cfg: QuadratureConfig = QuadratureConfig(),
              workers: int = 1) -> List[ResultRow]:
    """One row per (model, grid value), ordered by model then grid value.

    Points are independent, so ``workers > 1`` evaluates them on a thread
    pool; the result order does not depend on it.
    """
    pts = list(spec.points())

    def work(p):
        i, omega, x = p
        return evaluate_point(spec.models[i], omega, x, spec.m0, spec.h, cfg, spec.output_units)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(work, pts))
    else:
        rows = [work(p) for p in pts]
    order = sorted(range(len(pts)), key=lambda k: (pts[k][0], pts[k][1], pts[k][2]))
    return [rows[k] for k in order]


def figure2_specs(m0: float, h: float = 1.0, metal: MetalParams = COPPER, unit: str = "mOe",
                  x_grid=PRESET_X_GRID, freq_grid=PRESET_FREQ_GRID) -> Dict[str, List[SweepSpec]]:
    """(a) |Re Hx| against separation; (b) against frequency at x = 1, 2 cm."""
    drude, plasma = ResponseModel.drude(metal), ResponseModel.plasma(metal)
    part_a = [SweepSpec(SEPARATION, x_grid, m0, h, omega=om, models=[drude], output_units=unit)
              for om in SCENARIO_FREQUENCIES]
    part_a.append(SweepSpec(SEPARATION, x_grid, m0, h, omega=SCENARIO_FREQUENCIES[-1], models=[plasma],
                            output_units=unit))
    part_b = [SweepSpec(FREQUENCY, freq_grid, m0, h, x=x, models=[drude, plasma], output_units=unit)
              for x in (1.0, 2.0)]
    return {"a": part_a, "b": part_b}


def figure3_specs(m0: float, h: float = 1.0, metal: MetalParams = COPPER, unit: str = "mOe",
                  x_grid=PRESET_X_GRID, freq_grid=PRESET_FREQ_GRID) -> Dict[str, List[SweepSpec]]:
    """Im Hx for the Drude model: (a) against separation, (b) against frequency."""
    drude = ResponseModel.drude(metal)
    part_a = [SweepSpec(SEPARATION, x_grid, m0, h, omega=om, models=[drude], output_units=unit)
              for om in SCENARIO_FREQUENCIES]
    part_b = [SweepSpec(FREQUENCY, freq_grid, m0, h, x=x, models=[drude], output_units=unit)
              for x in (1.0, 2.0)]
    return {"a": part_a, "b": part_b}


def run_specs(specs: Sequence[SweepSpec], cfg: QuadratureConfig, workers: int = 1) -> List[ResultRow]:
    rows = []
    for spec in specs:
        rows.extend(run_sweep(spec, cfg, workers))
    return rows


def discrimination_ratio(x: float, omega: float, dipole: DipoleConfig,
                         cfg: QuadratureConfig = QuadratureConfig(),
                         numerator: Optional[ResponseModel] = None,
                         denominator: Optional[ResponseModel] = None) -> float:
    """|Re Hx| of ``numerator`` over that of ``denominator`` (plasma / Drude by default).

    ``omega`` overrides ``dipole.omega``.
    """
    numerator = numerator or ResponseModel.plasma()
    denominator = denominator or ResponseModel.drude()
    d = DipoleConfig(m0=dipole.m0, h=dipole.h, omega=omega)
    top = abs(h_x_reflected(x, 0.0, d, numerator, cfg).value.real)
    bottom = abs(h_x_reflected(x, 0.0, d, denominator, cfg).value.real)
    if bottom <= cfg.abs_tol_floor:
        log.warning("denominator |Re Hx| = %g is below the absolute floor; ratio reported as inf",
                    bottom)
        return math.inf
    return top / bottom


def params_report(metal: MetalParams = COPPER, coil: CoilSpec = DEFAULT_COIL, h: float = 1.0,
                  omegas: Sequence[float] = SCENARIO_FREQUENCIES, x: Optional[float] = None) -> dict:
    """Derived scenario numbers for a coil at height ``h`` over ``metal``."""
    x = h if x is None else x
    m0 = coil_moment(coil)
    threshold = omega_threshold(metal, h)
    r_image = math.hypot(x, 2.0 * h)
    report = {
        "metal": asdict(metal),
        "coil": asdict(coil),
        "h_cm": h,
        "m0_erg_per_Oe": m0,
        "omega_h_rad_s": omega_h(h),
        "Omega_rad_s": threshold,
        "plasma_like_at_all_frequencies": metal.gamma == 0,
        "frequencies": [],
    }
    for om in omegas:
        k0 = om / C_LIGHT
        kd = model_k_factor(ResponseModel.drude(metal), om, h)
        kp = model_k_factor(ResponseModel.plasma(metal), om, h)
        report["frequencies"].append({
            "omega_rad_s": om,
            "below_Omega": om <= threshold,
            "K_drude": [kd.real, kd.imag],
            "abs_K_drude": abs(kd),
            "abs_K_drude_low_freq": metal.omega_p**2 * om / (metal.gamma * omega_h(h) ** 2)
            if metal.gamma > 0 else math.inf,
            "K_plasma": kp.real,
            "k0_h": k0 * h,
            "propagating_suppression": propagating_suppression_factor(om, h),
            "k0_r": k0 * r_image,
            "electric_field_negligible": k0 * r_image < 1e-6,
        })
    return report


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def rows_to_csv(rows: Sequence[ResultRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([_fmt(getattr(r, name)) for name in CSV_HEADER])
    return buf.getvalue()


def rows_from_csv(text: str) -> List[ResultRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    types = {f.name: f.type for f in fields(ResultRow)}
    for rec in reader:
        kw = {}
        for name in CSV_HEADER:
            t = types[name]
            kw[name] = rec[name] if t == "str" else int(rec[name]) if t == "int" else float(rec[name])
        out.append(ResultRow(**kw))
    return out


def rows_to_json(rows: Sequence[ResultRow]) -> str:
    def clean(v):
        return None if isinstance(v, float) and not math.isfinite(v) else v

    payload = [{k: clean(v) for k, v in asdict(r).items()} | {"converged": r.converged} for r in rows]
    return json.dumps(payload, indent=2)
