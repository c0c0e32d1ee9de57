"""Reliability curves: Monte Carlo estimation, a semi-analytic oracle for the
decoupled special case, and paired-seed parameter sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import UnsupportedConfigError
from .kernel import (
    GammaLaw,
    facilitation_pmf,
    gamma_cdf,
    iid_sum_normal,
    normal_cdf,
    normal_pdf,
)
from .quadrature import integrate
from .simulate import ModelParams, run_replications

_Z95 = 1.959963984540054

SWEEPABLE = ("D0", "gamma", "eta", "lambda0", "alpha2", "H", "D1")


@dataclass(frozen=True)
class ReliabilityCurve:
    grid: np.ndarray       # ascending times
    estimate: np.ndarray   # survival fraction at each grid time
    ci_low: np.ndarray
    ci_high: np.ndarray
    n_reps: int
    soft_count: np.ndarray  # soft failures observed by each grid time
    hard_count: np.ndarray


def wilson_interval(successes: np.ndarray, n: int, z: float = _Z95) -> tuple[np.ndarray, np.ndarray]:
    """Score interval for a binomial proportion; stays sane near 0 and 1."""
    s = np.asarray(successes, dtype=float)
    p = s / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2.0 * n)) / denom
    half = (z / denom) * np.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n))
    # center - half is 0 (resp. 1) analytically at s = 0 (resp. n); pin the
    # endpoints so float residue never leaks into the bounds
    lo = np.where(s == 0, 0.0, np.maximum(center - half, 0.0))
    hi = np.where(s == n, 1.0, np.minimum(center + half, 1.0))
    return lo, hi


def _check_grid(grid: np.ndarray, horizon: float) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1:
        raise ValueError("grid must be a non-empty 1-D array of times")
    if np.any(np.diff(grid) < 0.0):
        raise ValueError("grid must be ascending")
    if grid[0] < 0.0 or grid[-1] > horizon + 1e-12:
        raise ValueError(f"grid must lie within [0, horizon={horizon}]")
    return grid


def estimate_reliability(params: ModelParams, grid, n_reps: int, master_seed: int,
                         *, dt: float | None = None, threads: int = 1,
                         batch_size: int = 16384) -> ReliabilityCurve:
    """Monte Carlo survival curve from one replication set evaluated at every
    grid time, which keeps the curve exactly nonincreasing."""
    horizon = params.numerics.horizon
    grid = _check_grid(grid, horizon)
    if dt is None:
        dt = params.numerics.dt
    ftime, mode = run_replications(params, horizon, dt, master_seed, n_reps,
                                   threads=threads, batch_size=batch_size)
    surv = np.empty(grid.size, dtype=np.int64)
    soft = np.empty(grid.size, dtype=np.int64)
    hard = np.empty(grid.size, dtype=np.int64)
    for i, t in enumerate(grid):
        gone = ftime <= t
        surv[i] = n_reps - int(gone.sum())
        soft[i] = int((gone & (mode == 1)).sum())
        hard[i] = int((gone & (mode == 2)).sum())
    lo, hi = wilson_interval(surv, n_reps)
    return ReliabilityCurve(
        grid=grid,
        estimate=surv / n_reps,
        ci_low=lo,
        ci_high=hi,
        n_reps=n_reps,
        soft_count=soft,
        hard_count=hard,
    )


def _require_decoupled(params: ModelParams) -> None:
    shk = params.shock
    deg = params.degradation
    if shk.gamma_dep != 0.0:
        raise UnsupportedConfigError(
            f"analytic reliability requires gamma_dep = 0 (wear does not feed the "
            f"shock intensity); got gamma_dep = {shk.gamma_dep}"
        )
    rate_change_possible = deg.alpha2 != deg.alpha1 and shk.damage_threshold < shk.hard_threshold
    if rate_change_possible:
        raise UnsupportedConfigError(
            "analytic reliability requires the rate change disabled: set alpha2 == alpha1 "
            f"or damage_threshold >= hard_threshold (got alpha2={deg.alpha2}, "
            f"alpha1={deg.alpha1}, D0={shk.damage_threshold}, D1={shk.hard_threshold})"
        )
    if deg.theta_law is not None:
        raise UnsupportedConfigError("analytic reliability requires a fixed shape-rate "
                                     "multiplier (theta_law must be None)")


def analytic_reliability(params: ModelParams, t: float, m_max: int | None = None) -> float:
    """Survival probability at t for the decoupled case, summed over shock counts.

    Term m is: (no hard failure)^m * P(m shocks) * P(wear + m jumps < H), the
    last factor a quadrature of the gamma CDF against the m-fold jump
    convolution. Truncation stops when the count law's tail is negligible or
    the wear factor has decayed to nothing. Coupled configurations are
    refused rather than approximated.
    """
    _require_decoupled(params)
    if t < 0.0 or not math.isfinite(t):
        raise ValueError(f"t must be finite and >= 0, got {t}")
    if t == 0.0:
        return 1.0
    deg = params.degradation
    shk = params.shock
    num = params.numerics
    big_lambda = shk.lambda0 * t
    f_w = normal_cdf(shk.hard_threshold, shk.magnitude_law)
    glaw = GammaLaw(deg.alpha1 * t, deg.beta)
    h = deg.soft_threshold

    total = 0.0
    cum_pmf = 0.0
    tiny_run = 0
    m = 0
    cap = m_max if m_max is not None else 200_000
    while True:
        p_m = facilitation_pmf(m, shk.eta, big_lambda)
        if m == 0:
            wear_ok = gamma_cdf(h, glaw)
        else:
            ylaw = iid_sum_normal(m, deg.jump_law)
            lo = max(0.0, ylaw.mean - 10.0 * ylaw.stdev)
            hi = min(h, ylaw.mean + 10.0 * ylaw.stdev)
            if hi <= lo:
                wear_ok = 0.0
            else:
                wear_ok = integrate(
                    lambda y: gamma_cdf(h - y, glaw) * normal_pdf(y, ylaw),
                    lo, hi, tol=num.quad_tol,
                )
            tiny_run = tiny_run + 1 if wear_ok < 1e-13 else 0
        total += (f_w**m) * p_m * wear_ok
        cum_pmf += p_m
        m += 1
        if 1.0 - cum_pmf < num.pmf_tail_tol:
            break
        if tiny_run >= 2:
            break  # extra jumps only push wear further past the threshold
        if m > cap:
            if m_max is not None:
                break
            raise UnsupportedConfigError(
                "analytic reliability did not truncate within 200000 count terms; "
                "this jump law keeps the wear factor from decaying"
            )
    return min(total, 1.0)


def analytic_no_shock_term(params: ModelParams, t: float) -> float:
    """The zero-shock contribution: P(pure wear < H) * P(no shock by t)."""
    _require_decoupled(params)
    if t < 0.0 or not math.isfinite(t):
        raise ValueError(f"t must be finite and >= 0, got {t}")
    if t == 0.0:
        return 1.0
    deg = params.degradation
    shk = params.shock
    glaw = GammaLaw(deg.alpha1 * t, deg.beta)
    return gamma_cdf(deg.soft_threshold, glaw) * facilitation_pmf(0, shk.eta, shk.lambda0 * t)


def apply_sweep_value(params: ModelParams, parameter: str, value: float) -> ModelParams:
    if parameter == "D0":
        return replace(params, shock=replace(params.shock, damage_threshold=value))
    if parameter == "gamma":
        return replace(params, shock=replace(params.shock, gamma_dep=value))
    if parameter == "eta":
        return replace(params, shock=replace(params.shock, eta=value))
    if parameter == "lambda0":
        return replace(params, shock=replace(params.shock, lambda0=value))
    if parameter == "alpha2":
        return replace(params, degradation=replace(params.degradation, alpha2=value))
    if parameter == "H":
        return replace(params, degradation=replace(params.degradation, soft_threshold=value))
    if parameter == "D1":
        return replace(params, shock=replace(params.shock, hard_threshold=value))
    raise ValueError(f"unknown sweep parameter {parameter!r}; accepted: {', '.join(SWEEPABLE)}")


def sweep(base: ModelParams, parameter: str, values, grid, n_reps: int, master_seed: int,
          *, dt: float | None = None, threads: int = 1) -> list[tuple[float, ReliabilityCurve]]:
    """One curve per value, all run from the same master seed so every
    replication sees identical randomness across values (common random
    numbers); orderings along the sweep then reflect the parameter alone."""
    values = [float(v) for v in values]
    if not values:
        raise ValueError("sweep needs at least one value")
    out = []
    for v in values:
        p = apply_sweep_value(base, parameter, v)
        out.append((v, estimate_reliability(p, grid, n_reps, master_seed,
                                            dt=dt, threads=threads)))
    return out
