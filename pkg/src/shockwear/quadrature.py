"""Adaptive 1-D quadrature used by the semi-analytic reliability path."""

from __future__ import annotations

import math
from typing import Callable

from .errors import IntegrationError

_INITIAL_PANELS = 8


def _simpson(fa, fm, fb, a, b):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def integrate(f: Callable[[float], float], a: float, b: float,
              tol: float = 1e-9, max_depth: int = 48) -> float:
    """Adaptive Simpson estimate of the integral of f over [a, b].

    The absolute error against the refined self-estimate is kept below tol.
    Raises IntegrationError (with best_estimate attached) if any subinterval
    still disagrees after max_depth halvings.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"integration bounds must be finite, got [{a}, {b}]")
    if a > b:
        raise ValueError(f"integrate requires a <= b, got a={a}, b={b}")
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if a == b:
        return 0.0

    total = 0.0
    converged = True
    width = (b - a) / _INITIAL_PANELS
    panel_tol = tol / _INITIAL_PANELS
    for p in range(_INITIAL_PANELS):
        lo = a + p * width
        hi = b if p == _INITIAL_PANELS - 1 else lo + width
        mid = 0.5 * (lo + hi)
        flo, fmid, fhi = f(lo), f(mid), f(hi)
        whole = _simpson(flo, fmid, fhi, lo, hi)
        # explicit stack: (lo, hi, flo, fmid, fhi, whole, tol, depth)
        stack = [(lo, hi, flo, fmid, fhi, whole, panel_tol, 0)]
        while stack:
            x0, x1, f0, f1, f2, s, t, depth = stack.pop()
            xm = 0.5 * (x0 + x1)
            xl = 0.5 * (x0 + xm)
            xr = 0.5 * (xm + x1)
            fl, fr = f(xl), f(xr)
            s_left = _simpson(f0, fl, f1, x0, xm)
            s_right = _simpson(f1, fr, f2, xm, x1)
            err = s_left + s_right - s
            if abs(err) <= 15.0 * t or depth >= max_depth:
                total += s_left + s_right + err / 15.0
                if abs(err) > 15.0 * t:
                    converged = False
            else:
                stack.append((x0, xm, f0, fl, f1, s_left, 0.5 * t, depth + 1))
                stack.append((xm, x1, f1, fr, f2, s_right, 0.5 * t, depth + 1))
    if not converged:
        raise IntegrationError(
            f"quadrature did not converge to tol={tol:g} within {max_depth} subdivisions",
            best_estimate=total,
        )
    return total
