"""Derivative-free nested optimization of the lifted bound objectives.

Two levels:

* inner: minimize the 2-D objective J(c3, beta, gamma, nu) over
  gamma > c3/2, nu >= 0 with a Nelder-Mead simplex in the unconstrained
  coordinates (u, v), gamma = c3/2 + e^u, nu = e^v.  The
  reparameterization enforces feasibility by construction, so the
  moment-divergence boundary p = c3/(4 gamma) = 1/2 is never crossed.
  The simplex is multistarted from a fixed log-spaced grid because the
  landscape is not known to be unimodal.

* outer: scan c3 over a log-spaced 25-point grid on the configured
  bracket, then refine around the best point with golden-section search.
  The upper bound is minimized over c3 and the lower bound maximized.
  If the best grid point sits on a bracket edge the bracket is widened
  once by 4x and the scan retried; a persistent edge is reported as
  non-convergence.  The c3 -> 0 closed-form limit (the simple bound) is
  always included as a candidate, so the returned value can never be
  worse than the simple bound; the limit is never evaluated at c3 = 0
  itself, which is a removable singularity of the objective.

Everything is deterministic: fixed grids, no randomized restarts, and
ties between equal-valued optima resolve to the smallest c3.  Distinct
solves share no state and may run concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds_lifted import (
    LiftedParams,
    i_uric_inner,
    lower_value_from_inner,
    upper_value_from_inner,
)
from .bounds_simple import (
    KIND_LOWER_LIFTED,
    KIND_UPPER_LIFTED,
    BoundResult,
    ProblemShape,
    optimal_nu,
    simple_lower,
    simple_upper,
    tail_term,
)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Multistart seed range for gamma - c3/2 and nu (log-spaced).
_SEED_LO = 1e-3
_SEED_HI = 30.0

_COARSE_POINTS = 25


@dataclass(frozen=True)
class OptimizerConfig:
    """Search tolerances and budgets.

    inner_tol: absolute objective tolerance of the inner simplex search.
    outer_tol: absolute width at which the golden-section c3 bracket stops.
    multistart_grid: inner starting points per axis (grid count squared total).
    c3_bracket: log-spaced outer search interval for c3.
    max_evals: inner objective evaluation budget per inner solve.
    """

    inner_tol: float = 1e-10
    outer_tol: float = 1e-6
    multistart_grid: int = 4
    c3_bracket: tuple[float, float] = (1e-4, 64.0)
    max_evals: int = 20000

    def __post_init__(self) -> None:
        if not (self.inner_tol > 0.0 and self.outer_tol > 0.0):
            raise ValueError(f"tolerances must be positive, got {self}")
        lo, hi = self.c3_bracket
        if not 0.0 < lo < hi:
            raise ValueError(f"c3 bracket must satisfy 0 < lo < hi, got {self.c3_bracket}")
        if self.multistart_grid < 1 or self.max_evals < 1:
            raise ValueError(f"grid count and budget must be positive, got {self}")


DEFAULT_CONFIG = OptimizerConfig()


@dataclass(frozen=True)
class OptimReport:
    """Outcome of one inner solve: best point, bookkeeping, convergence."""

    best_params: LiftedParams
    best_value: float
    evaluations: int
    converged: bool
    restarts_used: int


def _nelder_mead(f, x0, step, tol, max_evals):
    """Deterministic 2-D Nelder-Mead; returns (x, fx, evals, converged).

    Tracks the best point ever evaluated, so the reported value is the
    minimum over all evaluations regardless of simplex state, and never
    spends more than max(max_evals, n + 1) evaluations.
    """
    n = len(x0)
    budget = max(max_evals, n + 1)  # the initial simplex is mandatory
    pts = [list(x0)]
    for i in range(n):
        p = list(x0)
        p[i] += step
        pts.append(p)
    vals = [f(p) for p in pts]
    evals = n + 1
    ib = min(range(n + 1), key=lambda i: (vals[i], i))
    best_x, best_f = list(pts[ib]), vals[ib]
    while True:
        order = sorted(range(n + 1), key=lambda i: (vals[i], i))
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        if vals[-1] - vals[0] < tol:
            return best_x, best_f, evals, True
        if evals >= budget:
            return best_x, best_f, evals, False

        centroid = [sum(p[i] for p in pts[:-1]) / n for i in range(n)]
        xr = [centroid[i] + (centroid[i] - pts[-1][i]) for i in range(n)]
        fr = f(xr)
        evals += 1
        if fr < best_f:
            best_x, best_f = list(xr), fr
        if fr < vals[0]:
            if evals < budget:
                xe = [centroid[i] + 2.0 * (centroid[i] - pts[-1][i]) for i in range(n)]
                fe = f(xe)
                evals += 1
                if fe < best_f:
                    best_x, best_f = list(xe), fe
                if fe < fr:
                    xr, fr = xe, fe
            pts[-1], vals[-1] = xr, fr
        elif fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
        elif evals < budget:
            xc = [centroid[i] + 0.5 * (pts[-1][i] - centroid[i]) for i in range(n)]
            fc = f(xc)
            evals += 1
            if fc < best_f:
                best_x, best_f = list(xc), fc
            if fc < vals[-1]:
                pts[-1], vals[-1] = xc, fc
            else:
                for i in range(1, n + 1):
                    if evals >= budget:
                        break
                    pts[i] = [0.5 * (pts[i][j] + pts[0][j]) for j in range(n)]
                    vals[i] = f(pts[i])
                    evals += 1
                    if vals[i] < best_f:
                        best_x, best_f = list(pts[i]), vals[i]


def _seed_grid(count: int) -> list[float]:
    if count == 1:
        return [_SEED_LO]
    ratio = _SEED_HI / _SEED_LO
    return [_SEED_LO * ratio ** (i / (count - 1)) for i in range(count)]


def minimize_inner(c3: float, beta: float, config: OptimizerConfig | None = None) -> OptimReport:
    """Minimize J(c3, beta, gamma, nu) over gamma > c3/2, nu >= 0.

    Simplex descent in (u, v) = (log(gamma - c3/2), log(nu)), multistarted
    from a fixed log grid; deterministic for identical inputs.
    """
    cfg = config or DEFAULT_CONFIG
    if not c3 > 0.0:
        raise ValueError(f"minimize_inner requires c3 > 0, got {c3!r}")

    half_c3 = 0.5 * c3

    def objective(x):
        u, v = x
        if u > 700.0 or v > 700.0:
            return math.inf
        gamma = half_c3 + math.exp(u)
        if not gamma > half_c3:  # e^u below the rounding floor of gamma
            return math.inf
        return i_uric_inner(c3, beta, gamma, math.exp(v))

    seeds = [
        (math.log(g), math.log(v)) for g in _seed_grid(cfg.multistart_grid)
        for v in _seed_grid(cfg.multistart_grid)
    ]
    per_start = max(cfg.max_evals // len(seeds), 3)

    best_x = None
    best_f = math.inf
    best_run_converged = False
    total_evals = 0
    starts_run = 0
    for seed in seeds:
        x, fx, evals, converged = _nelder_mead(
            objective, seed, step=0.5, tol=cfg.inner_tol, max_evals=per_start
        )
        total_evals += evals
        starts_run += 1
        if fx < best_f:
            best_x, best_f, best_run_converged = x, fx, converged

    u, v = best_x
    params = LiftedParams(c3=c3, gamma=half_c3 + math.exp(u), nu=math.exp(v))
    return OptimReport(
        best_params=params,
        best_value=best_f,
        evaluations=total_evals,
        converged=best_run_converged,
        restarts_used=starts_run,
    )


def _golden_section(f, a, b, tol):
    """Golden-section minimize on [a, b]; returns the best evaluated (value, x)."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    best = min((fc, c), (fd, d))
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
            if (fc, c) < best:
                best = (fc, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
            if (fd, d) < best:
                best = (fd, d)
    return best


def _log_grid(lo: float, hi: float, count: int) -> list[float]:
    ratio = hi / lo
    return [lo * ratio ** (i / (count - 1)) for i in range(count)]


def _limit_params(beta: float) -> LiftedParams:
    # Analytic optimum of the c3 -> 0 reparameterized objective.
    gamma = 0.5 * tail_term(beta)
    nu_threshold = optimal_nu(beta)
    return LiftedParams(c3=0.0, gamma=gamma, nu=nu_threshold * nu_threshold / (4.0 * gamma))


def _optimize_outer(shape: ProblemShape, cfg: OptimizerConfig, kind: str) -> BoundResult:
    """Shared outer search; the lower family is maximized by negation."""
    upper = kind == KIND_UPPER_LIFTED
    cache: dict[float, OptimReport] = {}

    def signed_objective(c3: float) -> float:
        report = cache.get(c3)
        if report is None:
            report = minimize_inner(c3, shape.beta, cfg)
            cache[c3] = report
        if upper:
            return upper_value_from_inner(c3, shape, report.best_value)
        return -lower_value_from_inner(c3, shape, report.best_value)

    lo, hi = cfg.c3_bracket
    edge_fail = False
    for attempt in (0, 1):
        grid = _log_grid(lo, hi, _COARSE_POINTS)
        vals = [signed_objective(c) for c in grid]
        i_best = min(range(len(grid)), key=lambda i: (vals[i], i))
        at_edge = i_best in (0, len(grid) - 1)
        if not at_edge or attempt == 1:
            edge_fail = at_edge
            break
        if i_best == 0:
            lo = lo / 4.0
        else:
            hi = hi * 4.0

    a = grid[max(i_best - 1, 0)]
    b = grid[min(i_best + 1, len(grid) - 1)]
    refined_val, refined_c3 = _golden_section(signed_objective, a, b, cfg.outer_tol)

    candidates = [(vals[i], grid[i]) for i in range(len(grid))]
    candidates.append((refined_val, refined_c3))
    # The c3 -> 0 limit is exactly the simple bound; listing it with c3 = 0
    # both enforces never-worse-than-limit and wins ties at the smallest c3.
    limit_value = simple_upper(shape).value if upper else simple_lower(shape).value
    candidates.append((limit_value if upper else -limit_value, 0.0))

    best_val, best_c3 = min(candidates)
    if best_c3 == 0.0:
        params = _limit_params(shape.beta)
        converged = not (edge_fail and i_best == len(grid) - 1)
    else:
        params = cache[best_c3].best_params
        converged = cache[best_c3].converged and not edge_fail

    value = best_val if upper else -best_val
    return BoundResult(
        kind=kind,
        value=value,
        params=params,
        converged=converged,
        evaluations=sum(r.evaluations for r in cache.values()),
    )


def optimize_upper(shape: ProblemShape, config: OptimizerConfig | None = None) -> BoundResult:
    """Best (smallest) lifted upper bound over c3; never above the simple bound."""
    return _optimize_outer(shape, config or DEFAULT_CONFIG, KIND_UPPER_LIFTED)


def optimize_lower(shape: ProblemShape, config: OptimizerConfig | None = None) -> BoundResult:
    """Best (largest) lifted lower bound over c3; never below the simple bound."""
    return _optimize_outer(shape, config or DEFAULT_CONFIG, KIND_LOWER_LIFTED)
