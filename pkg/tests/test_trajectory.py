import numpy as np
import pytest

from cartanflow.barycenter import SolverOptions, cartan_barycenter
from cartanflow.errors import InvalidArgumentError
from cartanflow.generate import random_commuting_measure, random_symmetric
from cartanflow.measure import DiscreteMeasure, dirac, geometric_flow, log_mean, power_pushforward
from cartanflow.spd import congruence, geodesic, mat_exp, mat_log, mat_pow, mat_sqrt, riem_dist, whiten
from cartanflow.trajectory import (
    beta,
    beta_congruence_reduce,
    beta_prime_fd,
    beta_prime_zero,
    fixed_point_check,
    flow_law_check,
    geodesic_derivative_zero,
    lie_trotter_residual_profile,
    lie_trotter_scan,
    lipschitz_probe,
    norm_monotonicity_scan,
    power_lipschitz_constant,
    power_limit,
    trajectory_contraction_gap,
)
from cartanflow.wasserstein import d1w

SCALAR = DiscreteMeasure(np.array([[[2.0]], [[8.0]]]), [0.5, 0.5])
ONE = np.eye(1)


# ---- beta


def test_beta_at_zero_is_base_point(make_spd, make_measure):
    X = make_spd()
    s = beta(X, make_measure(), 0.0)
    assert np.array_equal(s.beta, X) and s.solver_iterations == 0


def test_beta_from_identity(make_measure):
    mu = make_measure()
    for t in (-1.0, 0.5, 2.0):
        assert riem_dist(beta(np.eye(3), mu, t).beta, cartan_barycenter(power_pushforward(mu, t)).result) < 1e-12


def test_beta_scalar():
    for t in (-1.5, -0.2, 0.7, 3.0):
        assert abs(beta(ONE, SCALAR, t).beta[0, 0] - 4.0**t) < 1e-12 * 4.0**t


def test_beta_at_one_is_barycenter(make_spd, make_measure):
    X, mu = make_spd(), make_measure()
    G = cartan_barycenter(mu).result
    assert riem_dist(beta(X, mu, 1.0).beta, G) < 1e-10
    assert riem_dist(beta_congruence_reduce(X, mu, 1.0), G) < 1e-10


def test_congruence_route_agrees(make_spd, make_measure):
    mu = make_measure()
    assert riem_dist(beta_congruence_reduce(np.eye(3), mu, 0.3), beta(np.eye(3), mu, 0.3).beta) < 1e-12
    for _ in range(5):
        X, mu = make_spd(), make_measure()
        assert riem_dist(beta_congruence_reduce(X, mu, 0.3), beta(X, mu, 0.3).beta) < 1e-9


# ---- derivative at the origin


def test_derivative_zero_at_barycenter(make_measure):
    mu = make_measure()
    assert np.linalg.norm(beta_prime_zero(cartan_barycenter(mu).result, mu)) < 1e-9


def test_derivative_from_identity_is_log_mean(make_measure):
    mu = make_measure()
    assert np.linalg.norm(beta_prime_zero(np.eye(3), mu) - log_mean(mu)) < 1e-13


def test_derivative_scalar():
    assert abs(beta_prime_zero(ONE, SCALAR)[0, 0] - np.log(4.0)) < 1e-15
    assert abs(beta_prime_fd(ONE, SCALAR, 0.0, 1e-4)[0, 0] - np.log(4.0)) < 1e-7


@pytest.mark.parametrize("m", [2, 3])
def test_fd_matches_closed_form(make_spd, make_measure, m):
    for _ in range(5):
        X, mu = make_spd(m), make_measure(m=m)
        exact = beta_prime_zero(X, mu)
        fd = beta_prime_fd(X, mu, 0.0, 1e-4)
        assert np.linalg.norm(fd - exact) / np.linalg.norm(exact) < 1e-5


def test_fd_single_atom_is_geodesic_speed(make_spd):
    X, A = make_spd(), make_spd()
    assert np.linalg.norm(beta_prime_fd(X, dirac(A)) - geodesic_derivative_zero(X, A)) < 1e-6


def test_fd_away_from_origin(make_spd):
    X, A = make_spd(), make_spd()
    t0 = 0.4
    # d/dt X #_t A = X^{1/2} W^t log W X^{1/2}, W = X^{-1/2} A X^{-1/2}
    W = whiten(X, A)
    sq = mat_sqrt(X)
    exact = sq @ mat_pow(W, t0) @ mat_log(W) @ sq
    assert np.linalg.norm(beta_prime_fd(X, dirac(A), t0) - exact) < 1e-6


def test_fd_step_must_be_positive(make_measure):
    with pytest.raises(InvalidArgumentError):
        beta_prime_fd(np.eye(3), make_measure(), 0.0, 0.0)


# ---- Lie-Trotter and norm scans


def test_lie_trotter_commuting_exact(rng):
    mu = random_commuting_measure(rng, 3, 5)
    for rec in lie_trotter_scan(mu, 2.0 ** -np.arange(0, 11)):
        assert rec.error < 1e-10


def test_lie_trotter_at_one_is_barycenter(make_measure):
    mu = make_measure()
    rec = lie_trotter_scan(mu, [1.0])[0]
    assert riem_dist(rec.value, cartan_barycenter(mu).result) < 1e-12


def test_lie_trotter_decreasing(make_measure):
    mu = make_measure(m=3, n=5)
    errors = [r.error for r in lie_trotter_scan(mu, 2.0 ** -np.arange(1, 11))]
    assert all(b < a for a, b in zip(errors, errors[1:]))
    assert errors[-1] < 1e-3


def test_lie_trotter_record_norms(make_measure):
    mu = make_measure()
    rec = lie_trotter_scan(mu, [0.5])[0]
    assert len(rec.ky_fan) == 3
    assert abs(rec.ky_fan[-1] - rec.schatten1) < 1e-12


def test_power_limit_rejects_zero(make_measure):
    with pytest.raises(InvalidArgumentError):
        power_limit(make_measure(), 0.0)


def test_norm_scan_monotone_and_inversion(make_measure):
    mu = make_measure(m=3, n=5)
    scan = norm_monotonicity_scan(mu, 2.0 ** -np.arange(0, 9))
    assert scan.forward.shape == (9, 3)
    assert scan.monotonicity_violation() <= 1e-9
    assert scan.limit_excess() <= 1e-9
    assert scan.inversion_gap() < 1e-8


def test_norm_scan_commuting_constant(rng):
    mu = random_commuting_measure(rng, 3, 4)
    scan = norm_monotonicity_scan(mu, 2.0 ** -np.arange(0, 6))
    assert np.max(np.abs(scan.forward - scan.limit[None, :])) < 1e-10


def test_norm_scan_needs_decreasing_ts(make_measure):
    with pytest.raises(InvalidArgumentError):
        norm_monotonicity_scan(make_measure(), [0.5, 1.0])


def test_residual_profile_bounded(make_measure):
    mu = make_measure()
    prof = lie_trotter_residual_profile(mu, 2.0 ** -np.arange(1, 9))
    assert prof.shape == (8, mu.size)
    assert np.all(np.isfinite(prof))
    assert np.max(np.abs(prof[-1] - prof[-2])) < 1e-2


# ---- fixed points


TS = (-2.0, -0.5, 0.5, 2.0)


def test_fixed_point_at_barycenter(make_measure):
    mu = make_measure()
    report = fixed_point_check(cartan_barycenter(mu).result, mu, TS)
    assert report.is_fixed_point
    assert max(report.values) < 1e-7


def test_fixed_point_perturbed(rng, make_measure):
    mu = make_measure()
    G = cartan_barycenter(mu).result
    P = congruence(mat_exp(0.1 * random_symmetric(rng, 3)), G)
    report = fixed_point_check(P, mu, TS)
    assert not report.is_fixed_point
    assert min(report.values) > 1e-3


def test_fixed_point_dirac(make_spd):
    A = make_spd()
    assert fixed_point_check(A, dirac(A), TS).is_fixed_point


# ---- flow laws and Lipschitz probe


def test_composition_trivial_pairs(make_spd, make_measure):
    X, mu = make_spd(), make_measure()
    assert flow_law_check(X, mu, [(1.0, 0.3), (1.0, -1.7), (0.0, 0.8)]).max_error < 1e-12


def test_composition_random_pairs_two_by_two(rng, make_spd, make_measure):
    X, mu = make_spd(2), make_measure(m=2, n=5)
    assert flow_law_check(X, mu, rng.uniform(-2, 2, (20, 2))).max_error <= 1e-10


@pytest.mark.parametrize("m", [3, 5])
def test_composition_error_at_conditioning_floor(rng, make_spd, make_measure, m):
    """The composition error stays within a small multiple of eps * cond(flowed atoms)."""
    X, mu = make_spd(m), make_measure(m=m, n=5)
    report = flow_law_check(X, mu, rng.uniform(-2, 2, (20, 2)))
    assert report.max_relative_to_roundoff < 1e4


def test_lipschitz_dirac_is_geodesic_speed(make_spd):
    X, A = make_spd(), make_spd()
    report = lipschitz_probe(X, dirac(A), 1.0, np.linspace(0, 1, 5))
    assert abs(report.max_ratio - riem_dist(X, A)) < 1e-10
    assert report.within_bound


def test_flow_symmetric_pairs(make_spd, make_measure):
    X, mu = make_spd(), make_measure()
    for t, s in [(0.3, 0.9), (0.1, 0.5), (0.7, 1.0)]:
        pos = d1w(geometric_flow(X, mu, t), geometric_flow(X, mu, s))[0]
        neg = d1w(geometric_flow(X, mu, -t), geometric_flow(X, mu, -s))[0]
        assert abs(pos - neg) < 1e-9


def test_lipschitz_bound(make_spd, make_measure):
    X, mu = make_spd(), make_measure()
    report = lipschitz_probe(X, mu, 1.0, np.linspace(0, 1, 6))
    assert report.within_bound
    assert lipschitz_probe(X, mu, 2.0, [-2.0, 0.0, 2.0]).bound is None


def test_lipschitz_grid_range(make_measure):
    with pytest.raises(InvalidArgumentError):
        lipschitz_probe(np.eye(3), make_measure(), 1.0, [0.0, 1.5])


def test_trajectory_contraction(make_spd, make_measure):
    X, mu = make_spd(), make_measure()
    assert trajectory_contraction_gap(X, mu, np.linspace(-1, 1, 5)) <= 1e-8


def test_power_lipschitz_constant_finite(make_spd, make_measure):
    X, mu = make_spd(), make_measure()
    k = power_lipschitz_constant(X, mu, np.linspace(-1, 1, 5))
    assert 0 < k < np.inf


def test_solver_options_pass_through(make_spd, make_measure):
    X, mu = make_spd(), make_measure()
    loose = beta(X, mu, 0.5, SolverOptions(tol=1e-4))
    tight = beta(X, mu, 0.5)
    assert loose.residual_norm <= 1e-4 and loose.solver_iterations <= tight.solver_iterations
