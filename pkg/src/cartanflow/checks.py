"""Seeded property checks for the geometry, the barycenter and the trajectory.

Each check draws its instances from :func:`cartanflow.generate.stream` with
a check-specific index offset, measures the worst case, and compares it with
a fixed tolerance. The ``suite`` CLI command and the acceptance tests both
run these functions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg

from .barycenter import SolverOptions, cartan_barycenter, karcher_residual, resolvent, solve
from .generate import random_commuting_measure, random_measure, random_spd, random_symmetric, stream
from .measure import DiscreteMeasure, dirac, geometric_flow, log_mean, mixture, power_pushforward, pushforward
from .spd import (
    congruence,
    frobenius,
    geodesic,
    loewner_leq,
    mat_exp,
    mat_inv,
    mat_log,
    operator_norm,
    riem_dist,
)
from .trajectory import (
    beta,
    beta_congruence_reduce,
    beta_prime_fd,
    beta_prime_zero,
    fixed_point_check,
    flow_law_check,
    lie_trotter_residual_profile,
    lie_trotter_scan,
    lipschitz_probe,
    norm_monotonicity_scan,
    power_lipschitz_constant,
    trajectory_contraction_gap,
)
from .wasserstein import d1w, permutation_oracle

DIMS = (2, 3, 5)


@dataclass
class CheckResult:
    """Outcome of one check: the worst measured value against its bound."""

    name: str
    passed: bool
    measured: float
    bound: float
    instances: int
    seed: int
    worst_index: int | None = None
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        where = "" if self.worst_index is None else f" (worst: seed={self.seed} index={self.worst_index})"
        return f"[{status}] {self.name}: measured {self.measured:.3e} vs bound {self.bound:.3e} over {self.instances} instances{where}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "measured": float(self.measured),
            "bound": float(self.bound),
            "instances": self.instances,
            "seed": self.seed,
            "worst_index": self.worst_index,
            "details": {k: _plain(v) for k, v in self.details.items()},
        }


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


class _Worst:
    """Track the largest value seen and the instance it came from."""

    def __init__(self):
        self.value = -np.inf
        self.index = None

    def update(self, value, index):
        if value > self.value or self.index is None:
            self.value, self.index = float(value), index


def _rng(seed, check_id, i):
    return stream(seed, check_id * 100_000 + i)


# ---------------------------------------------------------------- oracles


def chart_objective(S_params: np.ndarray, atoms: np.ndarray, weights: np.ndarray) -> float:
    """``sum_j w_j d^2(exp(S), A_j)`` for symmetric 2x2 ``S = [[a, b], [b, c]]``.

    Distances come from generalized eigenvalues of the pencil ``(A_j, Z)``,
    computed with SciPy rather than this package's spectral kernels.
    """
    a, b, c = S_params
    Z = scipy.linalg.expm(np.array([[a, b], [b, c]]))
    total = 0.0
    for w, A in zip(weights, atoms):
        lam = scipy.linalg.eigh(A, Z, eigvals_only=True)
        total += w * float(np.sum(np.log(lam) ** 2))
    return total


def chart_minimizer(atoms, weights, step: float = 1.0, min_step: float = 1e-10) -> np.ndarray:
    """Brute-force minimizer of the barycenter objective over the chart ``Z = exp(S)``.

    Compass search on the three entries of ``S``: move along each coordinate
    while the objective decreases, halve the step once no move helps.
    """
    x = np.zeros(3)
    fx = chart_objective(x, atoms, weights)
    while step >= min_step:
        moved = False
        for i in range(3):
            for sign in (1.0, -1.0):
                while True:
                    y = x.copy()
                    y[i] += sign * step
                    fy = chart_objective(y, atoms, weights)
                    if fy < fx:
                        x, fx, moved = y, fy, True
                    else:
                        break
        if not moved:
            step /= 2.0
    a, b, c = x
    return scipy.linalg.expm(np.array([[a, b], [b, c]]))


# ---------------------------------------------------------------- acceptance criteria


def check_two_point(seed=0, count=50, tol=1e-8, opts=None) -> CheckResult:
    worst = _Worst()
    for i in range(count):
        rng = _rng(seed, 1, i)
        m = DIMS[i % 3]
        A, B = random_spd(rng, m), random_spd(rng, m)
        t = rng.uniform()
        G = solve(DiscreteMeasure(np.stack([A, B]), [1 - t, t]), opts).result
        worst.update(riem_dist(G, geodesic(A, B, t)), i)
    return CheckResult("two_point_closed_form", worst.value < tol, worst.value, tol, count, seed, worst.index)


def check_karcher_residual(seed=0, count=60, tol=1e-12, opts=None) -> CheckResult:
    worst = _Worst()
    unconverged = 0
    for i in range(count):
        rng = _rng(seed, 2, i)
        mu = random_measure(rng, DIMS[i % 3], int(rng.integers(2, 13)), weights=("uniform", "dirichlet")[i % 2])
        report = cartan_barycenter(mu, opts)
        unconverged += not report.converged
        worst.update(max(report.residual_norm, frobenius(karcher_residual(report.result, mu))), i)
    return CheckResult(
        "karcher_residual",
        worst.value <= tol and unconverged == 0,
        worst.value,
        tol,
        count,
        seed,
        worst.index,
        {"unconverged": unconverged},
    )


def check_oracle(seed=0, count=20, tol=1e-6, opts=None) -> CheckResult:
    worst = _Worst()
    for i in range(count):
        rng = _rng(seed, 3, i)
        mu = random_measure(rng, 2, 3, weights="dirichlet")
        G = solve(mu, opts).result
        Z = chart_minimizer(mu.atoms, mu.weights)
        worst.update(riem_dist(G, Z), i)
    return CheckResult("oracle_equivalence", worst.value < tol, worst.value, tol, count, seed, worst.index)


def check_wasserstein(seed=0, count=30, tol=1e-9) -> CheckResult:
    gap, marg = _Worst(), _Worst()
    for i in range(count):
        rng = _rng(seed, 4, i)
        m, n = DIMS[i % 3], int(rng.integers(1, 7))
        mu, nu = random_measure(rng, m, n), random_measure(rng, m, n)
        gap.update(abs(d1w(mu, nu)[0] - permutation_oracle(mu, nu)), i)
    for i in range(count):
        rng = _rng(seed, 4, count + i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(1, 9)), weights="dirichlet")
        nu = random_measure(rng, m, int(rng.integers(1, 9)), weights="dirichlet")
        _, plan = d1w(mu, nu)
        err = plan.marginal_error(mu.weights, nu.weights)
        if np.any(plan.mass < 0):
            err = np.inf
        marg.update(err, count + i)
    worst = max(gap.value, marg.value)
    return CheckResult(
        "wasserstein_exactness",
        worst <= tol,
        worst,
        tol,
        2 * count,
        seed,
        gap.index if gap.value >= marg.value else marg.index,
        {"oracle_gap": gap.value, "marginal_error": marg.value},
    )


def check_contraction(seed=0, count=100, slack=1e-8, opts=None) -> CheckResult:
    worst = _Worst()
    for i in range(count):
        rng = _rng(seed, 5, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(1, 9)), weights="dirichlet")
        nu = random_measure(rng, m, int(rng.integers(1, 9)), weights="dirichlet")
        worst.update(riem_dist(solve(mu, opts).result, solve(nu, opts).result) - d1w(mu, nu)[0], i)
    return CheckResult("contraction", worst.value <= slack, worst.value, slack, count, seed, worst.index)


def check_derivative(seed=0, count=20, rel_tol=1e-5, ratio_range=(3.5, 4.5), h=1e-4, opts=None) -> CheckResult:
    rel, ratio_lo, ratio_hi = _Worst(), np.inf, -np.inf
    bad_ratio = None
    for i in range(count):
        rng = _rng(seed, 6, i)
        m = DIMS[i % 2]  # 2x2 and 3x3
        mu = random_measure(rng, m, int(rng.integers(2, 8)), weights="dirichlet")
        X = random_spd(rng, m)
        exact = beta_prime_zero(X, mu)
        rel.update(frobenius(beta_prime_fd(X, mu, 0.0, h, opts) - exact) / frobenius(exact), i)
        coarse = frobenius(beta_prime_fd(X, mu, 0.0, 1e-3, opts) - exact)
        fine = frobenius(beta_prime_fd(X, mu, 0.0, 5e-4, opts) - exact)
        r = coarse / fine
        ratio_lo, ratio_hi = min(ratio_lo, r), max(ratio_hi, r)
        if not ratio_range[0] <= r <= ratio_range[1] and bad_ratio is None:
            bad_ratio = i
    passed = rel.value < rel_tol and bad_ratio is None
    return CheckResult(
        "derivative_formula",
        passed,
        rel.value,
        rel_tol,
        count,
        seed,
        rel.index if bad_ratio is None else bad_ratio,
        {"order_ratio_min": ratio_lo, "order_ratio_max": ratio_hi, "order_ratio_range": list(ratio_range)},
    )


def check_lie_trotter(
    seed=0, count=6, kmax=10, factor=0.6, slack=1e-9, final_tol=1e-3, commuting_tol=1e-10, opts=None
) -> CheckResult:
    ts = [2.0**-k for k in range(1, kmax + 1)]
    worst_step, worst_final, worst_comm = _Worst(), _Worst(), _Worst()
    for i in range(count):
        rng = _rng(seed, 7, i)
        mu = random_measure(rng, DIMS[i % 3], int(rng.integers(2, 13)), weights="dirichlet")
        e = [r.error for r in lie_trotter_scan(mu, ts, opts)]
        worst_step.update(max(e[k + 1] - (factor * e[k] + slack) for k in range(kmax - 1)), i)
        worst_final.update(e[-1], i)
    for i in range(count):
        rng = _rng(seed, 7, count + i)
        mu = random_commuting_measure(rng, DIMS[i % 3], int(rng.integers(2, 13)))
        worst_comm.update(max(r.error for r in lie_trotter_scan(mu, ts, opts)), count + i)
    passed = worst_step.value <= 0 and worst_final.value < final_tol and worst_comm.value <= commuting_tol
    return CheckResult(
        "lie_trotter",
        passed,
        worst_final.value,
        final_tol,
        2 * count,
        seed,
        worst_final.index,
        {
            "max_step_excess": worst_step.value,
            "commuting_error": worst_comm.value,
            "contraction_factor": factor,
        },
    )


def check_norm_monotonicity(seed=0, count=6, kmax=8, slack=1e-9, inversion_tol=1e-8, opts=None) -> CheckResult:
    ts = [2.0**-k for k in range(0, kmax + 1)]
    mono, excess, inv = _Worst(), _Worst(), _Worst()
    for i in range(count):
        rng = _rng(seed, 8, i)
        mu = random_measure(rng, DIMS[i % 3], int(rng.integers(2, 13)), weights="dirichlet")
        scan = norm_monotonicity_scan(mu, ts, opts)
        mono.update(scan.monotonicity_violation(), i)
        excess.update(scan.limit_excess(), i)
        inv.update(scan.inversion_gap(), i)
    passed = mono.value <= slack and excess.value <= slack and inv.value < inversion_tol
    return CheckResult(
        "norm_monotonicity",
        passed,
        inv.value,
        inversion_tol,
        count,
        seed,
        inv.index,
        {"monotonicity_violation": mono.value, "limit_excess": excess.value, "slack": slack},
    )


def check_fixed_point(seed=0, count=6, slack=1e-7, away=1e-3, ts=(-2.0, -0.5, 0.5, 2.0), opts=None) -> CheckResult:
    at, off = _Worst(), _Worst()
    for i in range(count):
        rng = _rng(seed, 9, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(2, 9)), weights="dirichlet")
        G = solve(mu, opts).result
        at.update(max(fixed_point_check(G, mu, ts, opts, slack).values), i)
        E = mat_exp(0.1 * random_symmetric(rng, m))
        perturbed = fixed_point_check(congruence(E, G), mu, ts, opts, slack)
        off.update(-min(perturbed.values), i)
    passed = at.value < slack and -off.value > away
    return CheckResult(
        "fixed_point_equivalence",
        passed,
        at.value,
        slack,
        count,
        seed,
        at.index,
        {"min_perturbed_quantity": -off.value, "perturbed_threshold": away, "perturbed_worst_index": off.index},
    )


def check_flow_laws(seed=0, count=10, pairs=20, comp_tol=1e-10, slack=1e-8, grid_points=6) -> CheckResult:
    comp, lip = _Worst(), _Worst()
    roundoff_ratio, kappa = 0.0, 0.0
    grid = np.linspace(0.0, 1.0, grid_points)
    for i in range(count):
        rng = _rng(seed, 10, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(2, 7)), weights="dirichlet")
        X = random_spd(rng, m)
        ts = rng.uniform(-2.0, 2.0, size=(pairs, 2))
        report = flow_law_check(X, mu, ts)
        comp.update(report.max_error, i)
        roundoff_ratio = max(roundoff_ratio, report.max_relative_to_roundoff)
        kappa = max(kappa, max(report.conditioning))
        probe = lipschitz_probe(X, mu, 1.0, grid, slack)
        lip.update(probe.max_ratio - probe.bound, i)
    passed = comp.value <= comp_tol and lip.value <= slack
    return CheckResult(
        "flow_laws",
        passed,
        comp.value,
        comp_tol,
        count,
        seed,
        comp.index,
        {
            "lipschitz_excess": lip.value,
            "lipschitz_slack": slack,
            "lipschitz_worst_index": lip.index,
            "max_error_over_eps_kappa": roundoff_ratio,
            "max_atom_condition_number": kappa,
        },
    )


def check_two_flow_inequality(seed=0, count=50, slack=1e-8) -> CheckResult:
    """``d1w(X #_t mu, Y #_s nu) <= (1-t) d(X, Y) + t d1w(mu, nu) + |t-s| d1w(delta_Y, nu)`` for ``t, s`` in [0, 1]."""
    worst = _Worst()
    for i in range(count):
        rng = _rng(seed, 11, i)
        m = DIMS[i % 3]
        w = ("uniform", "dirichlet")[i % 2]
        mu = random_measure(rng, m, int(rng.integers(1, 7)), weights=w)
        nu = random_measure(rng, m, int(rng.integers(1, 7)), weights=w)
        X, Y = random_spd(rng, m), random_spd(rng, m)
        t, s = rng.uniform(size=2)
        lhs = d1w(geometric_flow(X, mu, t), geometric_flow(Y, nu, s))[0]
        rhs = (1 - t) * riem_dist(X, Y) + t * d1w(mu, nu)[0] + abs(t - s) * d1w(dirac(Y), nu)[0]
        worst.update(lhs - rhs, i)
    return CheckResult("two_flow_inequality", worst.value <= slack, worst.value, slack, count, seed, worst.index)


def check_resolvent(seed=0, count=20, slack=1e-8, zero_tol=1e-10, lams=(0.5, 1.0, 2.0), opts=None) -> CheckResult:
    worst, zero = _Worst(), _Worst()
    violations = 0
    for i in range(count):
        rng = _rng(seed, 12, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(1, 9)), weights="dirichlet")
        X = random_spd(rng, m)
        for lam in lams:
            b = beta(X, mu, lam / (lam + 1.0), opts).beta
            J = resolvent(lam, mu, X, opts)
            if not J.converged:
                worst.update(np.inf, i)
                continue
            violations += not loewner_leq(b, J.result, slack)
            # smallest slack that makes beta <= J hold
            worst.update(-np.linalg.eigvalsh(J.result - b)[0], i)
        zero.update(frobenius(resolvent(0.0, mu, X, opts).result - X) / frobenius(X), i)
    passed = violations == 0 and zero.value <= zero_tol
    return CheckResult(
        "resolvent_domination",
        passed,
        worst.value,
        slack,
        count,
        seed,
        worst.index,
        {"resolvent_zero_error": zero.value, "loewner_violations": violations},
    )


# ---------------------------------------------------------------- invariants


def check_geometry(seed=0, count=50, tol=1e-9) -> CheckResult:
    """Geodesic symmetry, affine parametrization, convexity, EMI, the log-norm identity, congruence invariance."""
    parts = {k: _Worst() for k in ("symmetry", "affine", "convexity", "emi", "log_norm", "congruence")}
    for i in range(count):
        rng = _rng(seed, 13, i)
        m = DIMS[i % 3]
        A, B, C, D = (random_spd(rng, m) for _ in range(4))
        t, s = rng.uniform(size=2)
        AB = geodesic(A, B, t)
        parts["symmetry"].update(frobenius(AB - geodesic(B, A, 1 - t)) / frobenius(AB), i)
        parts["affine"].update(abs(riem_dist(AB, geodesic(A, B, s)) - abs(t - s) * riem_dist(A, B)), i)
        parts["convexity"].update(
            riem_dist(AB, geodesic(C, D, t)) - (1 - t) * riem_dist(A, C) - t * riem_dist(B, D), i
        )
        parts["emi"].update(frobenius(mat_log(A) - mat_log(B)) - riem_dist(A, B), i)
        parts["log_norm"].update(
            abs(operator_norm(mat_log(A)) - np.log(max(operator_norm(A), operator_norm(mat_inv(A))))), i
        )
        M = rng.standard_normal((m, m)) + 2 * np.eye(m)
        parts["congruence"].update(abs(riem_dist(congruence(M, A), congruence(M, B)) - riem_dist(A, B)), i)
    worst = max(p.value for p in parts.values())
    return CheckResult(
        "geometry_invariants",
        worst <= tol,
        worst,
        tol,
        count,
        seed,
        max(parts.values(), key=lambda p: p.value).index,
        {k: p.value for k, p in parts.items()},
    )


def check_flow_inverse(seed=0, count=20, tol=1e-10) -> CheckResult:
    worst = _Worst()
    for i in range(count):
        rng = _rng(seed, 14, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(1, 9)))
        X = random_spd(rng, m)
        t = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        back = geometric_flow(X, geometric_flow(X, mu, 1.0 / t), t)
        worst.update(float(np.max(riem_dist(back.atoms, mu.atoms))), i)
    return CheckResult("flow_inverse", worst.value <= tol, worst.value, tol, count, seed, worst.index)


def check_equivariance(seed=0, count=20, tol=1e-9, opts=None) -> CheckResult:
    """Barycenter under congruence, inversion, atom reordering and weight splitting."""
    parts = {k: _Worst() for k in ("congruence", "inversion", "permutation", "split")}
    for i in range(count):
        rng = _rng(seed, 15, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(2, 9)), weights="dirichlet")
        G = solve(mu, opts).result
        X = random_spd(rng, m)
        R = scipy.linalg.inv(scipy.linalg.sqrtm(X).real)
        Gx = solve(pushforward(mu, lambda A: congruence(R, A)), opts).result
        parts["congruence"].update(riem_dist(Gx, congruence(R, G)), i)
        Ginv = solve(power_pushforward(mu, -1.0), opts).result
        parts["inversion"].update(riem_dist(Ginv, mat_inv(G)), i)
        perm = rng.permutation(mu.size)
        parts["permutation"].update(riem_dist(solve(DiscreteMeasure(mu.atoms[perm], mu.weights[perm]), opts).result, G), i)
        split = mixture(mu, mu, 0.5)
        parts["split"].update(riem_dist(solve(split, opts).result, G), i)
    worst = max(p.value for p in parts.values())
    return CheckResult(
        "barycenter_equivariance",
        worst <= tol,
        worst,
        tol,
        count,
        seed,
        max(parts.values(), key=lambda p: p.value).index,
        {k: p.value for k, p in parts.items()},
    )


def check_congruence_reduction(seed=0, count=15, tol=1e-9, opts=None) -> CheckResult:
    worst = _Worst()
    for i in range(count):
        rng = _rng(seed, 16, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(1, 9)), weights="dirichlet")
        X = random_spd(rng, m)
        t = rng.uniform(-2.0, 2.0)
        worst.update(riem_dist(beta(X, mu, t, opts).beta, beta_congruence_reduce(X, mu, t, opts)), i)
    return CheckResult("congruence_reduction", worst.value <= tol, worst.value, tol, count, seed, worst.index)


def check_pushforward_lipschitz(seed=0, count=30, slack=1e-9) -> CheckResult:
    worst = _Worst()
    for i in range(count):
        rng = _rng(seed, 17, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(1, 7)), weights="dirichlet")
        nu = random_measure(rng, m, int(rng.integers(1, 7)), weights="dirichlet")
        X = random_spd(rng, m)
        t = rng.uniform()
        lhs = d1w(geometric_flow(X, mu, t), geometric_flow(X, nu, t))[0]
        worst.update(lhs - t * d1w(mu, nu)[0], i)
    return CheckResult("pushforward_lipschitz", worst.value <= slack, worst.value, slack, count, seed, worst.index)


def check_trajectory_contraction(seed=0, count=8, slack=1e-8, opts=None) -> CheckResult:
    worst = _Worst()
    grid = [-1.0, -0.5, 0.0, 0.25, 0.5, 1.0]
    for i in range(count):
        rng = _rng(seed, 18, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(2, 7)), weights="dirichlet")
        X = random_spd(rng, m)
        worst.update(trajectory_contraction_gap(X, mu, grid, opts), i)
    return CheckResult("trajectory_contraction", worst.value <= slack, worst.value, slack, count, seed, worst.index)


def check_empirical_constants(seed=0, count=4, kmax=10, limit_tol=1e-2, opts=None) -> CheckResult:
    """Report the Lie-Trotter residual constant and the power-Lipschitz constant.

    The residual profile must stay finite and approach its ``t -> 0`` value
    ``||log A - log_mean|| - ||log A||`` (operator norms) at the smallest ``t``.
    """
    ts = [2.0**-k for k in range(0, kmax + 1)]
    gap = _Worst()
    c2, kh = [], []
    for i in range(count):
        rng = _rng(seed, 19, i)
        m = DIMS[i % 3]
        mu = random_measure(rng, m, int(rng.integers(2, 7)), weights="dirichlet")
        profile = lie_trotter_residual_profile(mu, ts, opts)
        L = log_mean(mu)
        logs = mat_log(mu.atoms)
        limit = np.array([operator_norm(lg - L) - operator_norm(lg) for lg in logs])
        gap.update(float(np.max(np.abs(profile[-1] - limit))) if np.all(np.isfinite(profile)) else np.inf, i)
        c2.append(float(np.max(profile)))
        X = random_spd(rng, m)
        kh.append(power_lipschitz_constant(X, mu, np.linspace(-1.0, 1.0, 5), opts=opts))
    return CheckResult(
        "empirical_constants",
        gap.value <= limit_tol and np.all(np.isfinite(kh)),
        gap.value,
        limit_tol,
        count,
        seed,
        gap.index,
        {"lie_trotter_constant": c2, "power_lipschitz_constant": kh},
    )


ACCEPTANCE: dict[str, Callable[..., CheckResult]] = {
    "two_point_closed_form": check_two_point,
    "karcher_residual": check_karcher_residual,
    "oracle_equivalence": check_oracle,
    "wasserstein_exactness": check_wasserstein,
    "contraction": check_contraction,
    "derivative_formula": check_derivative,
    "lie_trotter": check_lie_trotter,
    "norm_monotonicity": check_norm_monotonicity,
    "fixed_point_equivalence": check_fixed_point,
    "flow_laws": check_flow_laws,
    "two_flow_inequality": check_two_flow_inequality,
    "resolvent_domination": check_resolvent,
}

INVARIANTS: dict[str, Callable[..., CheckResult]] = {
    "geometry_invariants": check_geometry,
    "flow_inverse": check_flow_inverse,
    "barycenter_equivariance": check_equivariance,
    "congruence_reduction": check_congruence_reduction,
    "pushforward_lipschitz": check_pushforward_lipschitz,
    "trajectory_contraction": check_trajectory_contraction,
    "empirical_constants": check_empirical_constants,
}

ALL_CHECKS = {**ACCEPTANCE, **INVARIANTS}

# checks that run barycenter solves and therefore honour solver options
_SOLVER_CHECKS = {
    name
    for name, fn in ALL_CHECKS.items()
    if "opts" in fn.__code__.co_varnames[: fn.__code__.co_argcount]
}


def run_checks(seed: int = 0, names=None, opts: SolverOptions | None = None, progress=None) -> list[CheckResult]:
    """Run the named checks (all by default) in registry order."""
    names = list(ALL_CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in ALL_CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {unknown}")
    results = []
    for name in names:
        fn = ALL_CHECKS[name]
        result = fn(seed=seed, opts=opts) if (name in _SOLVER_CHECKS and opts is not None) else fn(seed=seed)
        results.append(result)
        if progress:
            progress(result)
    return results
