"""Projected power iterations maximizing Tr(x^T K x) over unit-row blocks.

The feasible set is the product of unit spheres: every row of the n x d0
iterate has 2-norm 1. One iteration applies the shifted operator K and
re-normalizes rows (with optional Nesterov-style extrapolation). The plain
iteration increases the objective strictly, by more than the squared step
norm, until it reaches a first-order critical point.

Randomness comes from numpy's default_rng (PCG64) seeded by the config, so
runs are reproducible across platforms.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass
class SolverConfig:
    d0: int = 30
    tol: float = 1e-8
    max_iter: int = 10000
    momentum: bool = True
    momentum_variant: str = "main"
    seed: int = 0
    shift_epsilon: float = 0.0

    def __post_init__(self):
        if int(self.d0) != self.d0 or self.d0 < 2:
            raise ValueError(f"d0 must be an integer >= 2, got {self.d0}")
        if not 0.0 < self.tol < 1.0:
            raise ValueError(f"tol must lie in (0, 1), got {self.tol}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if self.momentum_variant not in ("main", "appendix"):
            raise ValueError(f"unknown momentum variant {self.momentum_variant!r}")
        if self.shift_epsilon < 0:
            raise ValueError("shift_epsilon must be non-negative")


@dataclass
class SolveResult:
    """Final iterate with convergence diagnostics.

    objective is always Tr(x^T K x) at the final iterate; trace holds the
    per-iteration stopping bookkeeping (which for the momentum main variant
    is the surrogate Tr(y^T x), not the objective itself).
    """

    x: np.ndarray
    x0: np.ndarray
    objective: float
    delta: float
    trace: np.ndarray
    iterations: int
    converged: bool
    method: str
    step_norms_sq: np.ndarray = None
    delta_trace: np.ndarray = None


def project_rows(X):
    """Normalize each row to unit 2-norm; zero rows are an error."""
    X = np.asarray(X, dtype=float)
    norms = np.linalg.norm(X, axis=1)
    if (norms == 0.0).any():
        raise ValueError("cannot project a zero row onto the sphere")
    return X / norms[:, None]


def objective(k, x):
    """f(x) = Tr(x^T K x)."""
    return float(np.vdot(x, k.apply(x)))


def first_order_criterion(k, x):
    """Delta(x) = sum_i ||(Kx)_i|| - Tr(x^T K x); zero exactly at fixed points of x -> P(Kx)."""
    y = k.apply(x)
    return float(np.sum(np.linalg.norm(y, axis=1)) - np.vdot(x, y))


def _initial_point(k, cfg, rng, x0):
    if x0 is not None:
        return np.array(x0, dtype=float, copy=True)
    return project_rows(k.sample_columns(cfg.d0, rng))


def gpm_solve(k, cfg, rng=None, x0=None):
    """Plain projected power iteration x <- P(Kx).

    Stops once the relative objective change drops below cfg.tol (tested
    from the second iteration on) or max_iter is hit, in which case the
    result is flagged not converged.
    """
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    x = _initial_point(k, cfg, rng, x0)
    x0_saved = x.copy()
    y = k.apply(x)
    trace = [float(np.vdot(x, y))]
    deltas = [float(np.sum(np.linalg.norm(y, axis=1)) - trace[0])]
    steps = []
    m = 0
    converged = False
    while m < cfg.max_iter:
        m += 1
        x_new = project_rows(y)
        steps.append(float(np.sum((x_new - x) ** 2)))
        x = x_new
        y = k.apply(x)
        o = float(np.vdot(x, y))
        trace.append(o)
        deltas.append(float(np.sum(np.linalg.norm(y, axis=1)) - o))
        if m >= 2 and abs(trace[-1] - trace[-2]) / trace[-2] < cfg.tol:
            converged = True
            break
    return SolveResult(x=x, x0=x0_saved, objective=trace[-1], delta=deltas[-1],
                       trace=np.array(trace), iterations=m, converged=converged,
                       method="gpm", step_norms_sq=np.array(steps),
                       delta_trace=np.array(deltas))


def _renorm_with_fallback(z, fallback):
    # extrapolation can in principle produce a zero row; fall back to the
    # non-extrapolated power-iteration row there
    norms = np.linalg.norm(z, axis=1)
    bad = norms == 0.0
    if bad.any():
        z = z.copy()
        z[bad] = fallback[bad]
        norms = np.linalg.norm(z, axis=1)
    return z / norms[:, None]


def gpmm_solve(k, cfg, rng=None, x0=None):
    """Momentum variant with extrapolation weight r_n = (n-1)/(n+2).

    main variant:     y_n = K x_{n-1};  x_n = P(y_n + r_n (y_n - y_{n-1})),
                      stopping on the surrogate o_{n-1} = Tr(y_{n-1}^T x_{n-1}).
    appendix variant: y_m = x_m + r_m (x_m - x_{m-1});  x_{m+1} = P(K y_m),
                      stopping on the objective; K y_m is formed from cached
                      K x images so each iteration still costs one apply.

    Monotonicity is not guaranteed for either variant.
    """
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    x = _initial_point(k, cfg, rng, x0)
    x0_saved = x.copy()
    if cfg.momentum_variant == "main":
        y_prev = k.apply(x)
        x_prev = x
        trace = []
        n = 0
        converged = False
        while n < cfg.max_iter:
            n += 1
            trace.append(float(np.vdot(y_prev, x_prev)))
            y = k.apply(x_prev)
            r = (n - 1) / (n + 2)
            x_next = _renorm_with_fallback(y + r * (y - y_prev), y)
            x_prev, y_prev = x_next, y
            if n >= 2 and abs(trace[-1] - trace[-2]) / trace[-2] < cfg.tol:
                converged = True
                break
        x_final = x_prev
        iterations = n
    else:
        # K y_m = K x_m + r_m (K x_m - K x_{m-1}), so caching the K images
        # keeps the cost at one apply per iteration
        x_cur = x
        w_cur = k.apply(x_cur)
        w_prev = w_cur
        trace = [float(np.vdot(x_cur, w_cur))]
        m = 1
        converged = False
        while m < cfg.max_iter:
            m += 1
            r = (m - 2) / (m + 1)  # extrapolation weight for the step out of x_{m-1}
            z = w_cur + r * (w_cur - w_prev)
            x_next = _renorm_with_fallback(z, w_cur)
            w_prev = w_cur
            x_cur = x_next
            w_cur = k.apply(x_cur)
            trace.append(float(np.vdot(x_cur, w_cur)))
            if m >= 2 and abs(trace[-1] - trace[-2]) / trace[-2] < cfg.tol:
                converged = True
                break
        x_final = x_cur
        iterations = m
    y_final = k.apply(x_final)
    f_final = float(np.vdot(x_final, y_final))
    delta = float(np.sum(np.linalg.norm(y_final, axis=1)) - f_final)
    return SolveResult(x=x_final, x0=x0_saved, objective=f_final, delta=delta,
                       trace=np.array(trace), iterations=iterations,
                       converged=converged, method=f"gpmm-{cfg.momentum_variant}")


def solve(k, cfg, rng=None, x0=None):
    """Dispatch to the momentum or plain solver per cfg.momentum."""
    if cfg.momentum:
        return gpmm_solve(k, cfg, rng=rng, x0=x0)
    return gpm_solve(k, cfg, rng=rng, x0=x0)


def write_trace_csv(result, dest, include_delta=False):
    """Write the objective trace as "iteration,objective[,delta_criterion]"."""
    rows = []
    header = ["iteration", "objective"]
    with_delta = include_delta and result.delta_trace is not None
    if with_delta:
        header.append("delta_criterion")
    for i, o in enumerate(result.trace):
        row = [str(i), repr(float(o))]
        if with_delta:
            row.append(repr(float(result.delta_trace[i])))
        rows.append(row)
    text = "\n".join(",".join(r) for r in [header] + rows) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")
