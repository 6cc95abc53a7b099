"""Globally adaptive Gauss-Kronrod integration over a sequence of panels.

The integrand is complex valued and vectorized.  A semi-infinite range is
handled by marching across caller-supplied breakpoints (typically zeros of
the oscillating kernel) until both the last panel and an analytic bound on
the remaining tail are negligible; after that the panel with the largest
error estimate is bisected until the total error meets the tolerance.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

# 21-point Kronrod rule with its embedded 10-point Gauss rule (QUADPACK qk21)
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980046182,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
# Gauss nodes are the odd-indexed Kronrod abscissae
GAUSS_WEIGHTS[[1, 3, 5, 7, 9]] = _WG
GAUSS_WEIGHTS[[19, 17, 15, 13, 11]] = _WG

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-9
    abs_tol_floor: float = 1e-300
    max_segments: int = 10_000
    tail_epsilon: float = 1e-14
    # cap on bisections during the refinement phase
    max_subdivisions: int = 100_000

    def __post_init__(self):
        if not 0 < self.rel_tol <= 1e-3:
            raise ValueError(f"rel_tol must lie in (0, 1e-3], got {self.rel_tol}")
        if self.max_segments < 16:
            raise ValueError("max_segments must be at least 16")
        if self.abs_tol_floor < 0 or self.tail_epsilon <= 0:
            raise ValueError("tolerances must be positive")


class QuadratureError(RuntimeError):
    """Integration did not reach tolerance; ``partial`` holds what it got."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass
class Integral:
    value: complex
    error: float
    segments: int
    evaluations: int
    converged: bool = True


def gauss_kronrod(f, a: float, b: float):
    """One G10/K21 application on [a, b]: (value, error estimate)."""
    val, err, _ = _gk21(f, a, b)
    return val, err


def _gk21(f, a, b):
    """(value, error, roundoff_limited) for one panel."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fv = np.asarray(f(center + half * NODES), dtype=complex)
    resk = np.dot(KRONROD_WEIGHTS, fv)
    resg = np.dot(GAUSS_WEIGHTS, fv)
    mean = 0.5 * resk
    resabs = np.dot(KRONROD_WEIGHTS, np.abs(fv)) * abs(half)
    resasc = np.dot(KRONROD_WEIGHTS, np.abs(fv - mean)) * abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    floor = 50.0 * _EPS * resabs
    limited = False
    if resabs > _UFLOW / (50.0 * _EPS) and floor >= err:
        err, limited = floor, True
    return complex(resk * half), float(err), limited


def _tolerance(cfg: QuadratureConfig, value: complex) -> float:
    return max(cfg.rel_tol * abs(value), cfg.abs_tol_floor)


def _fsum(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Iterable[float],
    cfg: QuadratureConfig,
    tail_bound: Optional[Callable[[float], float]] = None,
) -> Integral:
    """Integrate ``f`` from the first breakpoint onward.

    With ``tail_bound=None`` the breakpoints are taken as a finite partition
    and every panel is used.  Otherwise the march stops once the last panel
    is below ``tail_epsilon`` of the running sum and ``tail_bound(b)`` (an
    upper bound on |integral from b to infinity|) is below a tenth of the
    tolerance.  Raises QuadratureError on failure; ``partial`` carries the
    best Integral so far.
    """
    it = iter(breakpoints)
    try:
        a = float(next(it))
    except StopIteration:
        return Integral(0j, 0.0, 0, 0)

    panels = []  # [a, b, value, err, roundoff_limited]
    acc = 0j
    tail = 0.0
    converged_tail = tail_bound is None
    for b in it:
        b = float(b)
        if b <= a:
            raise ValueError("breakpoints must be strictly increasing")
        val, err, limited = _gk21(f, a, b)
        panels.append([a, b, val, err, limited])
        acc += val
        a = b
        if tail_bound is not None:
            tail = tail_bound(b)
            small_panel = abs(val) <= cfg.tail_epsilon * abs(acc)
            if (small_panel or acc == 0) and tail <= 0.1 * _tolerance(cfg, acc):
                converged_tail = True
                break
        if len(panels) >= cfg.max_segments:
            break

    n_panels = len(panels)

    def result(converged):
        value = _fsum(p[2] for p in panels)
        error = math.fsum(p[3] for p in panels) + tail
        evals = 21 * (len(panels) + (len(panels) - n_panels))
        return Integral(value, error, n_panels, evals, converged)

    if not converged_tail:
        raise QuadratureError(
            f"tail not converged after {n_panels} panels (max_segments={cfg.max_segments})",
            result(False),
        )

    heap = [(-p[3], i) for i, p in enumerate(panels)]
    heapq.heapify(heap)
    total_err = math.fsum(p[3] for p in panels) + tail
    splits = 0
    while total_err > _tolerance(cfg, acc):
        if splits >= cfg.max_subdivisions:
            raise QuadratureError(
                f"error {total_err:.3g} above tolerance after {splits} bisections",
                result(False),
            )
        _, i = heapq.heappop(heap)
        lo, hi, val, err, limited = panels[i]
        mid = 0.5 * (lo + hi)
        if limited:
            raise QuadratureError(
                f"roundoff limits the error to {total_err:.3g}, above the tolerance "
                f"{_tolerance(cfg, acc):.3g} (cancellation too strong for double precision)",
                result(False),
            )
        if not lo < mid < hi:
            raise QuadratureError("interval too small to bisect", result(False))
        v1, e1, l1 = _gk21(f, lo, mid)
        v2, e2, l2 = _gk21(f, mid, hi)
        panels[i] = [lo, mid, v1, e1, l1]
        panels.append([mid, hi, v2, e2, l2])
        heapq.heappush(heap, (-e1, i))
        heapq.heappush(heap, (-e2, len(panels) - 1))
        acc += v1 + v2 - val
        total_err += e1 + e2 - err
        splits += 1
        if splits % 64 == 0:
            # keep the running sums from drifting
            acc = _fsum(p[2] for p in panels)
            total_err = math.fsum(p[3] for p in panels) + tail

    return result(True)
