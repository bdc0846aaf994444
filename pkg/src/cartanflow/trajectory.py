"""The barycentric trajectory ``beta(t) = G(X #_t mu)`` and numerical probes of its properties.

Every solve goes through :func:`cartanflow.barycenter.solve`, so a barycenter
that fails to converge raises :class:`~cartanflow.errors.ConvergenceError`
rather than silently contaminating a scan.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .barycenter import SolverOptions, karcher_residual, solve
from .errors import InvalidArgumentError
from .measure import (
    DiscreteMeasure,
    congruence_pushforward,
    dirac,
    geometric_flow,
    log_mean,
    power_pushforward,
)
from .spd import (
    frobenius,
    ky_fan,
    mat_exp,
    mat_log,
    mat_pow,
    mat_sqrt,
    operator_norm,
    riem_dist,
    schatten,
    sym,
    whiten,
)
from .wasserstein import d1w


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    beta: np.ndarray
    residual_norm: float
    solver_iterations: int


@dataclass(frozen=True)
class LieTrotterRecord:
    """``G(mu^t)^{1/t}`` at one ``t`` and its distance to the Log-Euclidean mean."""

    t: float
    value: np.ndarray
    error: float
    ky_fan: tuple[float, ...]
    schatten1: float
    schatten2: float
    iterations: int


def _replace_init(opts: SolverOptions | None, init) -> SolverOptions:
    opts = opts or SolverOptions()
    return SolverOptions(tol=opts.tol, max_iter=opts.max_iter, step=opts.step, init=init)


def beta(X: np.ndarray, mu: DiscreteMeasure, t: float, opts: SolverOptions | None = None) -> TrajectorySample:
    """``G(X #_t mu)``; ``t = 0`` returns ``X`` without solving."""
    X = np.asarray(X, dtype=float)
    if t == 0:
        return TrajectorySample(0.0, X.copy(), 0.0, 0)
    report = solve(geometric_flow(X, mu, t), opts, context=f"beta at t={t!r}")
    return TrajectorySample(float(t), report.result, report.residual_norm, report.iterations)


def beta_congruence_reduce(
    X: np.ndarray, mu: DiscreteMeasure, t: float, opts: SolverOptions | None = None
) -> np.ndarray:
    """``beta(t)`` through the whitened measure: ``X^{1/2} G((mu_X)^t) X^{1/2}``."""
    X = np.asarray(X, dtype=float)
    if t == 0:
        return X.copy()
    reduced = power_pushforward(congruence_pushforward(mu, X), t)
    G = solve(reduced, opts, context=f"reduced beta at t={t!r}").result
    sq = mat_sqrt(X)
    return sym(sq @ G @ sq)


def beta_prime_zero(X: np.ndarray, mu: DiscreteMeasure) -> np.ndarray:
    """Closed-form derivative at the origin, ``X^{1/2} R(X) X^{1/2}`` with ``R`` the Karcher residual."""
    sq = mat_sqrt(X)
    return sym(sq @ karcher_residual(X, mu) @ sq)


def beta_prime_fd(
    X: np.ndarray, mu: DiscreteMeasure, t0: float = 0.0, h: float = 1e-4, opts: SolverOptions | None = None
) -> np.ndarray:
    """Central difference ``(beta(t0 + h) - beta(t0 - h)) / (2h)``."""
    if not h > 0:
        raise InvalidArgumentError(f"finite-difference step must be positive, got {h}")
    forward = beta(X, mu, t0 + h, opts).beta
    backward = beta(X, mu, t0 - h, opts).beta
    return sym((forward - backward) / (2.0 * h))


def power_limit(mu: DiscreteMeasure, t: float, opts: SolverOptions | None = None) -> tuple[np.ndarray, int]:
    """``G(mu^t)^{1/t}`` and the solver iteration count.

    The solve starts from ``exp(t * log_mean(mu))``, the point the curve
    approaches as ``t -> 0``.
    """
    if t == 0:
        raise InvalidArgumentError("power limit needs t != 0")
    start = mat_exp(t * log_mean(mu))
    report = solve(power_pushforward(mu, t), _replace_init(opts, start), context=f"G(mu^t) at t={t!r}")
    return mat_pow(report.result, 1.0 / t), report.iterations


def lie_trotter_scan(mu: DiscreteMeasure, ts, opts: SolverOptions | None = None) -> list[LieTrotterRecord]:
    """Evaluate ``G(mu^t)^{1/t}`` along ``ts`` against its limit ``exp(log_mean(mu))``."""
    target = mat_exp(log_mean(mu))
    records = []
    for t in ts:
        value, its = power_limit(mu, t, opts)
        records.append(
            LieTrotterRecord(
                t=float(t),
                value=value,
                error=riem_dist(value, target),
                ky_fan=tuple(ky_fan(value, k) for k in range(1, mu.dim + 1)),
                schatten1=schatten(value, 1),
                schatten2=schatten(value, 2),
                iterations=its,
            )
        )
    return records


@dataclass(frozen=True)
class NormScan:
    """Ky Fan norms ``k = 1..m`` per ``t`` of the forward curve, the inverted curve, and the limit.

    ``forward[i, k-1]`` is the Ky Fan ``k`` norm of ``G(mu^t)^{1/t}`` at ``ts[i]``;
    ``inverse`` holds the same for ``G(mu^{-t})^{-1/t}``.
    """

    ts: np.ndarray
    forward: np.ndarray
    inverse: np.ndarray
    limit: np.ndarray

    def monotonicity_violation(self) -> float:
        """Largest decrease of any column as ``t`` decreases (0 if nondecreasing)."""
        if len(self.ts) < 2:
            return 0.0
        drops = self.forward[:-1] - self.forward[1:]
        return float(max(np.max(drops), 0.0))

    def limit_excess(self) -> float:
        """Largest amount by which a forward value exceeds the limit value."""
        return float(max(np.max(self.forward - self.limit[None, :]), 0.0))

    def inversion_gap(self) -> float:
        return float(np.max(np.abs(self.inverse - self.forward)))


def norm_monotonicity_scan(mu: DiscreteMeasure, ts, opts: SolverOptions | None = None) -> NormScan:
    ts = np.asarray(ts, dtype=float)
    if np.any(ts <= 0) or np.any(np.diff(ts) >= 0):
        raise InvalidArgumentError("norm scan needs positive, strictly decreasing t values")
    ks = range(1, mu.dim + 1)
    forward, inverse = [], []
    for t in ts:
        value, _ = power_limit(mu, t, opts)
        inv, _ = power_limit(mu, -t, opts)
        forward.append([ky_fan(value, k) for k in ks])
        inverse.append([ky_fan(inv, k) for k in ks])
    target = mat_exp(log_mean(mu))
    return NormScan(ts, np.array(forward), np.array(inverse), np.array([ky_fan(target, k) for k in ks]))


@dataclass(frozen=True)
class FixedPointReport:
    """The four quantities whose simultaneous vanishing characterizes ``X = G(mu)``."""

    derivative_norm: float
    barycenter_distance: float
    trajectory_displacement: float
    reduced_displacement: float
    slack: float

    @property
    def values(self) -> tuple[float, float, float, float]:
        return (
            self.derivative_norm,
            self.barycenter_distance,
            self.trajectory_displacement,
            self.reduced_displacement,
        )

    @property
    def is_fixed_point(self) -> bool:
        return all(v < self.slack for v in self.values)


def fixed_point_check(
    X: np.ndarray, mu: DiscreteMeasure, ts, opts: SolverOptions | None = None, slack: float = 1e-7
) -> FixedPointReport:
    X = np.asarray(X, dtype=float)
    whitened = congruence_pushforward(mu, X)
    eye = np.eye(mu.dim)
    traj, red = 0.0, 0.0
    for t in ts:
        traj = max(traj, riem_dist(X, beta(X, mu, t, opts).beta))
        if t != 0:
            G = solve(power_pushforward(whitened, t), opts, context=f"whitened power at t={t!r}").result
            red = max(red, riem_dist(eye, G))
    return FixedPointReport(
        derivative_norm=frobenius(beta_prime_zero(X, mu)),
        barycenter_distance=riem_dist(X, solve(mu, opts).result),
        trajectory_displacement=traj,
        reduced_displacement=red,
        slack=slack,
    )


@dataclass(frozen=True)
class FlowLawReport:
    """Composition errors per ``(t, s)`` pair.

    ``conditioning`` holds the largest condition number among the atoms of
    ``X #_{ts} mu``: a stored SPD matrix of condition number ``k`` is only
    determined to about ``eps * k`` in the Riemannian distance.
    """

    pairs: tuple[tuple[float, float], ...]
    errors: tuple[float, ...]
    conditioning: tuple[float, ...]

    @property
    def max_error(self) -> float:
        return max(self.errors) if self.errors else 0.0

    @property
    def max_relative_to_roundoff(self) -> float:
        """Largest ``error / (eps * condition number)``."""
        eps = np.finfo(float).eps
        return max((e / (eps * k) for e, k in zip(self.errors, self.conditioning)), default=0.0)


def flow_law_check(X: np.ndarray, mu: DiscreteMeasure, pairs) -> FlowLawReport:
    """Atomwise distance between ``X #_{ts} mu`` and ``X #_s (X #_t mu)`` for each ``(t, s)``."""
    errors, conds = [], []
    for t, s in pairs:
        direct = geometric_flow(X, mu, t * s)
        composed = geometric_flow(X, geometric_flow(X, mu, t), s)
        errors.append(float(np.max(riem_dist(direct.atoms, composed.atoms))))
        w = np.linalg.eigvalsh(direct.atoms)
        conds.append(float(np.max(w[:, -1] / w[:, 0])))
    return FlowLawReport(tuple((float(t), float(s)) for t, s in pairs), tuple(errors), tuple(conds))


@dataclass(frozen=True)
class LipschitzReport:
    """Empirical Lipschitz ratio of ``t -> X #_t mu`` in the Wasserstein-1 metric.

    ``bound`` is ``d1w(delta_X, mu)`` and only populated when ``T == 1``.
    """

    T: float
    max_ratio: float
    argmax: tuple[float, float]
    bound: float | None
    slack: float

    @property
    def within_bound(self) -> bool | None:
        if self.bound is None:
            return None
        return self.max_ratio <= self.bound + self.slack


def flow_measures(X: np.ndarray, mu: DiscreteMeasure, grid) -> list[DiscreteMeasure]:
    return [geometric_flow(X, mu, t) for t in grid]


def lipschitz_probe(X: np.ndarray, mu: DiscreteMeasure, T: float, grid, slack: float = 1e-8) -> LipschitzReport:
    grid = [float(t) for t in grid]
    if any(abs(t) > T for t in grid):
        raise InvalidArgumentError(f"grid leaves [-{T}, {T}]")
    flows = flow_measures(X, mu, grid)
    best, arg = 0.0, (np.nan, np.nan)
    for i in range(len(grid)):
        for j in range(i + 1, len(grid)):
            if grid[i] == grid[j]:
                continue
            ratio = d1w(flows[i], flows[j])[0] / abs(grid[i] - grid[j])
            if ratio > best:
                best, arg = ratio, (grid[i], grid[j])
    bound = d1w(dirac(X), mu)[0] if T == 1 else None
    return LipschitzReport(float(T), best, arg, bound, slack)


def lie_trotter_residual_profile(mu: DiscreteMeasure, ts, opts: SolverOptions | None = None) -> np.ndarray:
    """Per ``t`` and atom: ``(1/t) ||log(G(mu^t)^{-1/2} A^t G(mu^t)^{-1/2})|| - ||log A||`` (operator norms).

    Bounded rows over ``t -> 0`` are the finite-support form of the uniform
    bound behind the Lie-Trotter limit; the maximum is an empirical constant.
    """
    log_norms = np.array([operator_norm(L) for L in mat_log(mu.atoms)])
    rows = []
    for t in ts:
        powered = power_pushforward(mu, t)
        G = solve(powered, _replace_init(opts, mat_exp(t * log_mean(mu)))).result
        logs = mat_log(whiten(G, powered.atoms))
        rows.append([operator_norm(L) / abs(t) for L in logs] - log_norms)
    return np.array(rows)


def power_lipschitz_constant(
    X: np.ndarray, mu: DiscreteMeasure, grid, alphas=(-1.0, -0.5, 0.5, 1.0), opts: SolverOptions | None = None
) -> float:
    """Largest ``||beta(t)^a - beta(s)^a|| / |t - s|`` (operator norm) over grid pairs and exponents ``a``."""
    grid = [float(t) for t in grid]
    betas = [beta(X, mu, t, opts).beta for t in grid]
    best = 0.0
    for a in alphas:
        powers = [mat_pow(B, a) for B in betas]
        for i in range(len(grid)):
            for j in range(i + 1, len(grid)):
                if grid[i] != grid[j]:
                    best = max(best, operator_norm(powers[i] - powers[j]) / abs(grid[i] - grid[j]))
    return best


def trajectory_contraction_gap(
    X: np.ndarray, mu: DiscreteMeasure, grid, opts: SolverOptions | None = None
) -> float:
    """Largest ``d(beta(t), beta(s)) - d1w(X #_t mu, X #_s mu)`` over grid pairs (should be <= 0)."""
    grid = [float(t) for t in grid]
    flows = flow_measures(X, mu, grid)
    betas = [beta(X, mu, t, opts).beta for t in grid]
    worst = -np.inf
    for i in range(len(grid)):
        for j in range(i + 1, len(grid)):
            worst = max(worst, riem_dist(betas[i], betas[j]) - d1w(flows[i], flows[j])[0])
    return float(worst)


def geodesic_derivative_zero(X: np.ndarray, A: np.ndarray) -> np.ndarray:
    """Derivative at ``t = 0`` of ``t -> X #_t A``: ``X^{1/2} log(X^{-1/2} A X^{-1/2}) X^{1/2}``."""
    sq = mat_sqrt(X)
    return sym(sq @ mat_log(whiten(X, A)) @ sq)

