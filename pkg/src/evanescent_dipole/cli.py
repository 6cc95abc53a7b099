"""Command-line entry point: ``evanescent-dipole <command> [options]``.

Commands: field, sweep, figure2, figure3, params, ratio.  Every command
starts from the copper / 10 mm / 10-turn-coil scenario; a JSON config file
(--config) replaces parts of it and explicit flags override both.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .dipole import DEFAULT_COIL, CoilSpec, DipoleConfig, coil_moment
from .materials import COPPER, MetalParams, ResponseModel
from .quadrature import QuadratureConfig
from .sweep import (FREQUENCY, SEPARATION, SCENARIO_FREQUENCIES, SweepSpec, discrimination_ratio,
                    evaluate_point, figure2_specs, figure3_specs, params_report, rows_to_csv,
                    rows_to_json, run_specs)
from .units import FIELD_UNITS, normalize_field_unit

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGED = 3

log = logging.getLogger("evanescent_dipole")


class ConfigError(ValueError):
    pass


@dataclass
class Scenario:
    metal: MetalParams = COPPER
    coil: Optional[CoilSpec] = DEFAULT_COIL
    m0_override: Optional[float] = None
    h: float = 1.0
    omega: float = 100.0
    x: float = 1.0
    omega_given: bool = False
    x_grid: Optional[List[float]] = None
    freq_grid: Optional[List[float]] = None
    models: List[str] = field(default_factory=lambda: ["drude", "plasma"])
    quad: QuadratureConfig = QuadratureConfig()
    unit: str = "mOe"
    out: Optional[str] = None
    as_json: bool = False
    workers: int = 1

    @property
    def m0(self) -> float:
        return self.m0_override if self.m0_override is not None else coil_moment(self.coil)

    def response_models(self) -> List[ResponseModel]:
        return [make_model(name, self.metal) for name in self.models]


def make_model(name: str, metal: MetalParams) -> ResponseModel:
    name = name.lower()
    if name == "drude":
        return ResponseModel.drude(metal)
    if name == "plasma":
        return ResponseModel.plasma(metal)
    if name == "ideal":
        return ResponseModel.ideal()
    raise ConfigError(f"unknown model {name!r} (expected drude, plasma or ideal)")


def parse_grid(text: str, log_default: bool) -> List[float]:
    """``V`` or ``START:STOP:N`` with an optional ``:log``/``:lin`` suffix."""
    parts = text.replace(" ", ":").split(":")
    parts = [p for p in parts if p]
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        spacing = "log" if log_default else "lin"
        if parts[-1] in ("log", "lin"):
            spacing = parts.pop()
        if len(parts) != 3:
            raise ValueError
        start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad grid {text!r}; expected V or START:STOP:N[:log|lin]") from None
    if n < 1 or stop < start:
        raise ConfigError(f"bad grid {text!r}")
    if spacing == "log":
        if start <= 0:
            raise ConfigError("log grid needs positive bounds")
        return list(np.logspace(math.log10(start), math.log10(stop), n))
    return list(np.linspace(start, stop, n))


def _grid_from_config(value, log_default):
    if isinstance(value, (int, float)):
        return [float(value)]
    if isinstance(value, str):
        return parse_grid(value, log_default)
    if isinstance(value, list):
        return [float(v) for v in value]
    if isinstance(value, dict):
        spacing = value.get("spacing", "log" if log_default else "lin")
        return parse_grid(f"{value['start']}:{value['stop']}:{value['n']}:{spacing}", log_default)
    raise ConfigError(f"cannot read grid from {value!r}")


def load_config(path: str, sc: Scenario) -> Scenario:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    known = {"metal", "coil", "m0", "geometry", "sweep", "quadrature", "output"}
    extra = set(doc) - known
    if extra:
        raise ConfigError(f"unknown config sections: {sorted(extra)}")
    try:
        if "metal" in doc:
            sc.metal = MetalParams(**doc["metal"])
        if "coil" in doc:
            sc.coil = CoilSpec(**doc["coil"])
        if "m0" in doc:
            sc.m0_override = float(doc["m0"])
        geo = doc.get("geometry", {})
        if "h" in geo:
            sc.h = float(geo["h"])
        if "omega" in geo:
            sc.omega, sc.omega_given = float(geo["omega"]), True
        if "x" in geo:
            grid = _grid_from_config(geo["x"], False)
            sc.x, sc.x_grid = grid[0], grid if len(grid) > 1 else None
        sweep = doc.get("sweep", {})
        if "models" in sweep:
            sc.models = list(sweep["models"])
        if "x" in sweep:
            sc.x_grid = _grid_from_config(sweep["x"], False)
        if "frequency" in sweep:
            sc.freq_grid = _grid_from_config(sweep["frequency"], True)
            sc.omega_given = True
        if "quadrature" in doc:
            sc.quad = QuadratureConfig(**doc["quadrature"])
        out = doc.get("output", {})
        if "unit" in out:
            sc.unit = normalize_field_unit(out["unit"])
        if "path" in out:
            sc.out = out["path"]
        if "format" in out:
            sc.as_json = out["format"] == "json"
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"invalid config {path}: {exc}") from exc
    return sc


def build_scenario(args) -> Scenario:
    sc = Scenario()
    if args.config:
        sc = load_config(args.config, sc)
    try:
        if args.model:
            sc.models = [args.model]
        if args.h is not None:
            sc.h = args.h
        if args.omega is not None:
            sc.omega, sc.omega_given = args.omega, True
        if args.x is not None:
            grid = parse_grid(args.x, log_default=False)
            sc.x = grid[0]
            sc.x_grid = grid if len(grid) > 1 else None
        if args.freq is not None:
            grid = parse_grid(args.freq, log_default=True)
            sc.omega, sc.omega_given = grid[0], True
            sc.freq_grid = grid if len(grid) > 1 else None
        if args.unit is not None:
            sc.unit = normalize_field_unit(args.unit)
        if args.tol is not None:
            q = sc.quad
            sc.quad = QuadratureConfig(args.tol, q.abs_tol_floor, q.max_segments, q.tail_epsilon,
                                       q.max_subdivisions)
        if args.out is not None:
            sc.out = args.out
        if args.json:
            sc.as_json = True
        sc.workers = max(1, args.workers)
        if not (sc.h > 0 and sc.omega > 0 and sc.m0 > 0):
            raise ConfigError("h, omega and m0 must be positive")
        for name in sc.models:
            make_model(name, sc.metal)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return sc


def _emit(text: str, sc: Scenario):
    if sc.out and sc.out != "-":
        with open(sc.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_rows(rows, sc: Scenario) -> int:
    _emit(rows_to_json(rows) if sc.as_json else rows_to_csv(rows), sc)
    return EXIT_OK if all(r.converged for r in rows) else EXIT_NONCONVERGED


def cmd_field(sc: Scenario, args) -> int:
    rows = [evaluate_point(m, sc.omega, sc.x, sc.m0, sc.h, sc.quad, sc.unit)
            for m in sc.response_models()]
    return _emit_rows(rows, sc)


def cmd_sweep(sc: Scenario, args) -> int:
    models = sc.response_models()
    if sc.x_grid and sc.freq_grid:
        raise ConfigError("sweep either separation (--x range) or frequency (--freq range), not both")
    if sc.freq_grid:
        spec = SweepSpec(FREQUENCY, sc.freq_grid, sc.m0, sc.h, x=sc.x, models=models,
                         output_units=sc.unit)
    else:
        grid = sc.x_grid or [sc.x]
        spec = SweepSpec(SEPARATION, grid, sc.m0, sc.h, omega=sc.omega, models=models,
                         output_units=sc.unit)
    return _emit_rows(run_specs([spec], sc.quad, sc.workers), sc)


def _cmd_figure(builder, sc: Scenario, args) -> int:
    kw = {}
    if sc.x_grid:
        kw["x_grid"] = sc.x_grid
    if sc.freq_grid:
        kw["freq_grid"] = sc.freq_grid
    parts = builder(sc.m0, sc.h, sc.metal, sc.unit, **kw)
    specs = []
    for key in ("a", "b"):
        if args.part in (None, key):
            specs.extend(parts[key])
    return _emit_rows(run_specs(specs, sc.quad, sc.workers), sc)


def _omegas(sc: Scenario) -> List[float]:
    if sc.freq_grid:
        return list(sc.freq_grid)
    return [sc.omega] if sc.omega_given else list(SCENARIO_FREQUENCIES)


def cmd_params(sc: Scenario, args) -> int:
    report = params_report(sc.metal, sc.coil, sc.h, _omegas(sc), x=sc.x)
    if sc.m0_override is not None:
        report["m0_erg_per_Oe"] = sc.m0_override
        report["m0_source"] = "config"
    _emit(json.dumps(report, indent=2), sc)
    return EXIT_OK


def cmd_ratio(sc: Scenario, args) -> int:
    omegas = _omegas(sc)
    xs = sc.x_grid or [sc.x]
    dipole = DipoleConfig(m0=sc.m0, h=sc.h, omega=omegas[0])
    out = []
    for om in omegas:
        for x in xs:
            ratio = discrimination_ratio(x, om, dipole, sc.quad,
                                         ResponseModel.plasma(sc.metal), ResponseModel.drude(sc.metal))
            out.append({"omega_rad_s": om, "x_cm": x, "h_cm": sc.h,
                        "plasma_over_drude_abs_re_Hx": ratio})
    if sc.as_json:
        _emit(json.dumps(out, indent=2), sc)
    else:
        lines = ["omega_rad_s,x_cm,h_cm,plasma_over_drude_abs_re_Hx"]
        lines += [",".join(format(v, ".17g") for v in d.values()) for d in out]
        _emit("\n".join(lines) + "\n", sc)
    return EXIT_OK


COMMANDS = {
    "field": cmd_field,
    "sweep": cmd_sweep,
    "figure2": lambda sc, a: _cmd_figure(figure2_specs, sc, a),
    "figure3": lambda sc, a: _cmd_figure(figure3_specs, sc, a),
    "params": cmd_params,
    "ratio": cmd_ratio,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON scenario file")
    common.add_argument("--model", choices=["drude", "plasma", "ideal"])
    common.add_argument("--omega", type=float, metavar="RAD_S")
    common.add_argument("--h", type=float, metavar="CM", help="dipole height above the plate")
    common.add_argument("--x", metavar="CM[:CM:N]", help="lateral offset or linear grid")
    common.add_argument("--freq", metavar="RAD_S[:RAD_S:N]", help="frequency or log grid")
    common.add_argument("--unit", choices=list(FIELD_UNITS))
    common.add_argument("--tol", type=float, metavar="REL", help="relative quadrature tolerance")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    common.add_argument("--workers", type=int, default=1, help="threads for sweep points")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="evanescent-dipole",
        description="Lateral field of an oscillating magnetic dipole above a metal plate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("field", parents=[common], help="H_x at one point")
    sub.add_parser("sweep", parents=[common], help="separation or frequency sweep")
    for name in ("figure2", "figure3"):
        p = sub.add_parser(name, parents=[common], help=f"{name} preset sweeps")
        p.add_argument("--part", choices=["a", "b"])
    sub.add_parser("params", parents=[common], help="derived scenario parameters (JSON)")
    sub.add_parser("ratio", parents=[common], help="plasma/Drude |Re Hx| ratio")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        sc = build_scenario(args)
        return COMMANDS[args.command](sc, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
