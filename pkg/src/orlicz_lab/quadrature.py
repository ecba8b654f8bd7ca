"""Real-line integration of exponentially tilted integrands.

The single numerical kernel behind every thermodynamic quantity: adaptive
Gauss-Kronrod panels (via QUADPACK) on a truncated domain, with the
truncation point solved from the potential itself.  The domain is always
split at x = 0 so kinks of |x|^p potentials sit on panel boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

from .errors import ConvergenceError, DivergenceError, TruncationError
from .potentials import OrliczFunction

# exp() underflows to 0 below this; used to short-circuit dead integrand tails
_LOG_TINY = -745.0


@dataclass(frozen=True)
class QuadratureConfig:
    """Truncation, tolerance, and subdivision policy for real-line integrals."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-30
    max_subdivisions: int = 2**15
    truncation_margin: float = 40.0

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.abs_tol <= 0.0:
            raise ValueError("abs_tol must be positive")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be at least 8")
        if self.truncation_margin <= 0.0:
            raise ValueError("truncation_margin must be positive")


DEFAULT_CONFIG = QuadratureConfig()


def truncation_point(
    f: OrliczFunction, alpha: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Smallest x beyond which exp(alpha*M) has dropped by the margin.

    Solves M(x) = margin/(-alpha) by geometric bracket doubling followed by
    bisection; valid because M is nondecreasing on [0, inf).
    """
    if not alpha < 0.0:
        raise ValueError(f"tilt alpha must be negative, got {alpha}")
    target = cfg.truncation_margin / (-alpha)

    hi = 1.0
    with np.errstate(over="ignore"):
        for _ in range(2100):
            if float(f.value(hi)) >= target:
                break
            hi *= 2.0
        else:
            raise TruncationError(
                f"{f.name}: no truncation point below x={hi:.3g}; "
                "potential appears bounded"
            )
        lo = 0.0
        while hi - lo > 1e-12 * hi:
            mid = 0.5 * (lo + hi)
            if float(f.value(mid)) >= target:
                hi = mid
            else:
                lo = mid
    return hi


def _quad(func, a, b, cfg: QuadratureConfig, points=None):
    kwargs = dict(
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions,
        full_output=1,
    )
    if points:
        pts = [p for p in points if a < p < b]
        if pts:
            kwargs["points"] = pts
    res = integrate.quad(func, a, b, **kwargs)
    value, err = res[0], res[1]
    if len(res) > 3 and err > max(cfg.rel_tol * abs(value), cfg.abs_tol):
        raise ConvergenceError(
            f"quadrature failed on [{a:.6g}, {b:.6g}]: {res[3]}",
            estimate=value,
            error_bound=err,
        )
    return value


def tilted_integral(
    f: OrliczFunction,
    alpha: float,
    g: Optional[Callable[[float], float]] = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    even: Optional[bool] = None,
) -> float:
    """Integrate g(x) * exp(alpha*M(x)) over the real line.

    g defaults to 1 (taken even).  When g is declared even only [0, X_T]
    is integrated and doubled; otherwise the negative half axis is folded
    onto [0, X_T] by reflection, which makes odd integrands cancel exactly.
    """
    if not alpha < 0.0:
        raise ValueError(f"tilt alpha must be negative, got {alpha}")
    x_t = truncation_point(f, alpha, cfg)
    if g is None:
        g = lambda x: 1.0  # noqa: E731
        even = True

    def right(u):
        t = alpha * float(f.value(u))
        if t < _LOG_TINY:
            return 0.0
        return float(g(u)) * math.exp(t)

    val_right = _quad(right, 0.0, x_t, cfg)
    if even:
        return 2.0 * val_right

    def left(u):
        t = alpha * float(f.value(u))
        if t < _LOG_TINY:
            return 0.0
        return float(g(-u)) * math.exp(t)

    return _quad(left, 0.0, x_t, cfg) + val_right


def log_exponent_integral(
    exponent: Callable[[float], float],
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    kinks: Sequence[float] = (),
) -> float:
    """log of the integral over the real line of exp(E(x)) for even E.

    E may peak away from 0 (tilted moment generating functions do) but must
    eventually decrease to -inf; the integration window ends where E has
    dropped truncation_margin below its peak.  Raises DivergenceError when
    no such descent is found, i.e. the integral is infinite.
    """
    margin = cfg.truncation_margin

    # locate a point provably past the peak
    e0 = float(exponent(0.0))
    best = e0
    hi = 1.0
    for _ in range(1100):
        e_hi = float(exponent(hi))
        if not np.isfinite(e_hi) and e_hi > 0:
            raise DivergenceError("exponent grows without bound")
        best = max(best, e_hi)
        if e_hi <= best - margin:
            break
        hi *= 2.0
    else:
        raise DivergenceError(
            "exponent never drops below its peak by the truncation margin"
        )

    # refine the peak on a dense grid, then bisect for the cutoff
    grid = np.concatenate(([0.0], np.geomspace(hi * 2**-40, hi, 512)))
    vals = np.array([float(exponent(x)) for x in grid])
    i_peak = int(np.argmax(vals))
    e_peak = float(vals[i_peak])
    x_peak = float(grid[i_peak])
    cutoff = e_peak - margin

    lo = x_peak
    while hi - lo > 1e-12 * max(hi, 1.0):
        mid = 0.5 * (lo + hi)
        if float(exponent(mid)) <= cutoff:
            hi = mid
        else:
            lo = mid

    def shifted(u):
        t = float(exponent(u)) - e_peak
        if t < _LOG_TINY:
            return 0.0
        return math.exp(t)

    pts = [x_peak] + [k for k in kinks if 0.0 < k < hi]
    val = _quad(shifted, 0.0, hi, cfg, points=pts)
    return e_peak + math.log(2.0 * val)
