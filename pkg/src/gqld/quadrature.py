"""Brute-force verification machinery.

Adaptive 15-point Gauss-Kronrod quadrature over compactified infinite
intervals, moment integrals, and grid-based monotonicity/convexity checks.
This module is the referee: it must stay independent of the analytic
formulas it is used to verify, so it only ever sees opaque callables.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .results import ValidationReport

__all__ = [
    "QuadratureResult",
    "integrate_line",
    "integrate_halfline",
    "moment",
    "grid_monotone",
    "grid_convexity",
]

# 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
# Gauss weights are zero at the Kronrod-only nodes.
_GK15 = (
    (+0.9914553711208126, 0.0, 0.0229353220105292),
    (-0.9914553711208126, 0.0, 0.0229353220105292),
    (+0.9491079123427585, 0.1294849661688697, 0.0630920926299786),
    (-0.9491079123427585, 0.1294849661688697, 0.0630920926299786),
    (+0.8648644233597691, 0.0, 0.1047900103222502),
    (-0.8648644233597691, 0.0, 0.1047900103222502),
    (+0.7415311855993945, 0.2797053914892767, 0.1406532597155259),
    (-0.7415311855993945, 0.2797053914892767, 0.1406532597155259),
    (+0.5860872354676911, 0.0, 0.1690047266392679),
    (-0.5860872354676911, 0.0, 0.1690047266392679),
    (+0.4058451513773972, 0.3818300505051189, 0.1903505780647854),
    (-0.4058451513773972, 0.3818300505051189, 0.1903505780647854),
    (+0.2077849550078985, 0.0, 0.2044329400752989),
    (-0.2077849550078985, 0.0, 0.2044329400752989),
    (0.0, 0.4179591836734694, 0.2094821410847278),
)

_MAX_PANELS = 10_000
_INITIAL_PANELS = 32


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool


def _panel(f: Callable[[float], float], lo: float, hi: float) -> tuple[float, float]:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (lo + hi)
    gauss = 0.0
    kronrod = 0.0
    for node, wg, wk in _GK15:
        fv = f(mid + half * node)
        if not math.isfinite(fv):
            raise ValueError(f"integrand returned non-finite value at x={mid + half * node!r}")
        gauss += wg * fv
        kronrod += wk * fv
    return half * kronrod, half * abs(kronrod - gauss)


def _adaptive(f: Callable[[float], float], lo: float, hi: float,
              tol: float, max_panels: int) -> QuadratureResult:
    if not tol > 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    width = (hi - lo) / _INITIAL_PANELS
    heap = []   # (-err, tiebreak, lo, hi, value, err)
    counter = 0
    evaluations = 0
    for i in range(_INITIAL_PANELS):
        a = lo + i * width
        b = lo + (i + 1) * width
        val, err = _panel(f, a, b)
        evaluations += 15
        heapq.heappush(heap, (-err, counter, a, b, val, err))
        counter += 1
    total_err = sum(item[5] for item in heap)
    while total_err > tol and len(heap) < max_panels:
        _, _, a, b, val, err = heapq.heappop(heap)
        total_err -= err
        m = 0.5 * (a + b)
        v1, e1 = _panel(f, a, m)
        v2, e2 = _panel(f, m, b)
        evaluations += 30
        heapq.heappush(heap, (-e1, counter, a, m, v1, e1))
        counter += 1
        heapq.heappush(heap, (-e2, counter, m, b, v2, e2))
        counter += 1
        total_err += e1 + e2
    # deterministic total: exact summation in panel order
    panels = sorted((item[2], item[4]) for item in heap)
    value = math.fsum(v for _, v in panels)
    return QuadratureResult(value=value, error_estimate=total_err,
                            evaluations=evaluations, converged=total_err <= tol)


def integrate_line(f: Callable[[float], float], tol: float = 1e-10, *,
                   max_panels: int = _MAX_PANELS, width: float = 16.0) -> QuadratureResult:
    """Integrate f over the whole real line.

    Substitutes y = width * atanh(u), mapping the line onto (-1, 1); the
    integrands this package cares about decay exponentially in y, so the
    transformed integrand vanishes (or is mildly algebraic) at the
    endpoints and adaptive bisection picks up the rest.
    """
    def g(u: float) -> float:
        if abs(u) >= 1.0:   # only reachable on sub-eps panels; the limit is 0
            return 0.0
        y = width * math.atanh(u)
        return f(y) * width / (1.0 - u * u)

    return _adaptive(g, -1.0, 1.0, tol, max_panels)


def integrate_halfline(f: Callable[[float], float], tol: float = 1e-10, *,
                       max_panels: int = _MAX_PANELS, scale: float = 1.0) -> QuadratureResult:
    """Integrate f over (0, infinity) via x = -scale * ln(1 - u)."""
    def g(u: float) -> float:
        if u >= 1.0:        # only reachable on sub-eps panels; the limit is 0
            return 0.0
        x = -scale * math.log1p(-u)
        return f(x) * scale / (1.0 - u)

    return _adaptive(g, 0.0, 1.0, tol, max_panels)


def moment(f_pdf: Callable[[float], float], k: int, tol: float = 1e-10,
           **kwargs) -> QuadratureResult:
    """k-th raw moment of a density on the real line."""
    if k < 0:
        raise ValueError(f"moment order must be non-negative, got {k}")
    return integrate_line(lambda y: (y ** k) * f_pdf(y), tol, **kwargs)


def _grid_check(f, lo: float, hi: float, n: int, order: int,
                threshold: float, name: str) -> ValidationReport:
    if n < 100:
        raise ValueError(f"grid check needs at least 100 points, got {n}")
    if not lo < hi:
        raise ValueError(f"grid check requires lo < hi, got [{lo}, {hi}]")
    xs = np.linspace(lo, hi, n)
    vals = np.array([f(x) for x in xs], dtype=float)
    if order == 1:
        diffs = vals[1:] - vals[:-1]
        locs = xs[:-1]
    else:
        diffs = vals[2:] - 2.0 * vals[1:-1] + vals[:-2]
        locs = xs[1:-1]
    worst_idx = int(np.argmin(diffs))
    worst = -float(diffs[worst_idx])   # largest violation of the sign condition
    return ValidationReport.evaluate(
        name, worst, threshold, n,
        detail=f"worst at x={locs[worst_idx]:.6g}")


def grid_monotone(f: Callable[[float], float], lo: float, hi: float,
                  n: int, threshold: float = 1e-12) -> ValidationReport:
    """Check f is non-decreasing on a uniform grid (first differences)."""
    return _grid_check(f, lo, hi, n, 1, threshold, f"monotone[{lo:g},{hi:g}]")


def grid_convexity(f: Callable[[float], float], lo: float, hi: float,
                   n: int, threshold: float = 1e-9) -> ValidationReport:
    """Check f is convex on a uniform grid (second central differences)."""
    return _grid_check(f, lo, hi, n, 2, threshold, f"convex[{lo:g},{hi:g}]")
