import numpy as np
import pytest

from cartanflow.barycenter import (
    SolverOptions,
    cartan_barycenter,
    gradient_flow_integrate,
    karcher_residual,
    resolvent,
    riemannian_gradient,
    solve,
)
from cartanflow.checks import chart_minimizer
from cartanflow.errors import ConvergenceError, InvalidArgumentError
from cartanflow.generate import random_commuting_measure
from cartanflow.measure import DiscreteMeasure, dirac, log_mean, pushforward
from cartanflow.spd import geodesic, loewner_leq, mat_exp, riem_dist
from cartanflow.trajectory import beta, beta_prime_zero

SCALAR = DiscreteMeasure(np.array([[[2.0]], [[8.0]]]), [0.5, 0.5])
L4 = np.log(4.0)


def two_point(A, B, t):
    return DiscreteMeasure(np.stack([A, B]), [1.0 - t, t])


# ---- residual


def test_residual_zero_at_dirac(make_spd):
    A = make_spd()
    assert np.linalg.norm(karcher_residual(A, dirac(A))) < 1e-14


def test_residual_zero_at_geodesic_point(make_spd):
    for t in (0.2, 0.5, 0.8):
        A, B = make_spd(), make_spd()
        assert np.linalg.norm(karcher_residual(geodesic(A, B, t), two_point(A, B, t))) < 1e-10


def test_residual_scalar():
    assert abs(karcher_residual(np.eye(1), SCALAR)[0, 0] - L4) < 1e-15


def test_residual_shape_check(make_measure):
    with pytest.raises(InvalidArgumentError):
        karcher_residual(np.eye(2), make_measure(m=3))


# ---- solver


def test_barycenter_of_dirac(make_spd):
    A = make_spd()
    report = cartan_barycenter(dirac(A))
    assert report.converged and riem_dist(report.result, A) < 1e-14


def test_two_point_closed_form(rng, make_spd):
    for _ in range(10):
        A, B = make_spd(), make_spd()
        t = rng.uniform(0.05, 0.95)
        assert riem_dist(cartan_barycenter(two_point(A, B, t)).result, geodesic(A, B, t)) < 1e-8


def test_commuting_atoms(rng):
    for m in (2, 3, 5):
        mu = random_commuting_measure(rng, m, 5)
        assert riem_dist(cartan_barycenter(mu).result, mat_exp(log_mean(mu))) < 1e-10


def test_scalar_geometric_mean():
    assert abs(cartan_barycenter(SCALAR).result[0, 0] - 4.0) < 1e-14


def test_matches_chart_minimizer(make_measure):
    for _ in range(3):
        mu = make_measure(m=2, n=3)
        oracle = chart_minimizer(mu.atoms, mu.weights)
        assert riem_dist(cartan_barycenter(mu).result, oracle) < 1e-6


@pytest.mark.parametrize("init", ["log_euclidean", "first_atom"])
def test_inits_agree(make_measure, init):
    mu = make_measure(m=3, n=6)
    ref = cartan_barycenter(mu).result
    report = cartan_barycenter(mu, SolverOptions(init=init))
    assert report.converged and report.residual_norm <= 1e-12
    assert riem_dist(report.result, ref) < 1e-10


def test_explicit_init(make_measure, make_spd):
    mu = make_measure()
    report = cartan_barycenter(mu, SolverOptions(init=make_spd()))
    assert report.converged


def test_nonconvergence_is_reported(make_measure):
    mu = make_measure(m=3, n=5, spread=1.0)
    report = cartan_barycenter(mu, SolverOptions(max_iter=1))
    assert not report.converged and report.iterations == 1
    with pytest.raises(ConvergenceError) as info:
        solve(mu, SolverOptions(max_iter=1), context="unit test")
    assert info.value.report.iterations == 1 and "unit test" in str(info.value)


@pytest.mark.parametrize(
    "kwargs", [{"tol": 0.0}, {"max_iter": 0}, {"step": 0.0}, {"step": 1.5}, {"init": "random"}]
)
def test_options_validation(kwargs):
    with pytest.raises(InvalidArgumentError):
        SolverOptions(**kwargs)


def test_small_step_still_converges(make_measure):
    mu = make_measure()
    report = cartan_barycenter(mu, SolverOptions(step=0.5, max_iter=2000))
    assert report.converged


# ---- resolvent


def test_resolvent_at_zero(make_spd, make_measure):
    X = make_spd()
    assert np.array_equal(resolvent(0.0, make_measure(), X).result, X)


def test_resolvent_scalar_closed_form():
    for lam in (0.5, 1.0, 2.0):
        for x in (0.5, 3.0):
            J = resolvent(lam, SCALAR, np.array([[x]])).result[0, 0]
            assert abs(J - np.exp((lam * L4 + np.log(x)) / (lam + 1))) < 1e-13


def test_resolvent_negative_parameter(make_measure):
    with pytest.raises(InvalidArgumentError):
        resolvent(-1.0, make_measure(), np.eye(3))


def test_resolvent_dominates_trajectory(make_spd, make_measure):
    """beta(t) <= J_lam(X) in the Loewner order, t = lam / (lam + 1)."""
    for lam in (0.5, 1.0, 2.0):
        t = lam / (lam + 1.0)
        for _ in range(5):
            X, mu = make_spd(), make_measure()
            assert loewner_leq(beta(X, mu, t).beta, resolvent(lam, mu, X).result, 1e-8)


def test_resolvent_determinant_identity(make_spd, make_measure):
    """det beta(t) = det J_lam(X): both barycenters have det = geometric mean of atom dets."""
    for lam in (0.5, 1.0, 2.0):
        t = lam / (lam + 1.0)
        X, mu = make_spd(), make_measure()
        b = beta(X, mu, t).beta
        J = resolvent(lam, mu, X).result
        assert abs(np.linalg.slogdet(b)[1] - np.linalg.slogdet(J)[1]) < 1e-10


def test_resolvent_pushforward_domination(make_spd, make_measure):
    """beta(t) <= G of mu pushed along A -> (X + lam A) / (lam + 1), by the pointwise AGM inequality."""
    for lam in (0.5, 1.0, 2.0):
        t = lam / (lam + 1.0)
        for _ in range(5):
            X, mu = make_spd(), make_measure()
            upper = cartan_barycenter(pushforward(mu, lambda A: (X + lam * A) / (lam + 1.0))).result
            assert loewner_leq(beta(X, mu, t).beta, upper, 1e-8)


def test_resolvent_counterexample_is_indefinite(make_spd):
    theta = 0.6
    R = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    A, B = np.diag([4.0, 1.0]), R @ np.diag([1.0, 4.0]) @ R.T
    mu = DiscreteMeasure(np.stack([A, B]), [0.5, 0.5])
    gap = np.linalg.eigvalsh(resolvent(1.0, mu, np.eye(2)).result - beta(np.eye(2), mu, 0.5).beta)
    assert gap[0] < -1e-3 and gap[1] > 1e-3


# ---- gradient and gradient flow


def test_gradient_vanishes_at_barycenter(make_measure):
    mu = make_measure()
    G = cartan_barycenter(mu).result
    assert np.linalg.norm(riemannian_gradient(G, mu)) < 1e-9


def test_gradient_scalar():
    for x in (0.5, 2.0, 7.0):
        g = riemannian_gradient(np.array([[x]]), SCALAR)[0, 0]
        assert abs(g - (-x * (L4 - np.log(x)))) < 1e-13


def test_gradient_is_negative_derivative(make_spd, make_measure):
    X, mu = make_spd(), make_measure()
    assert np.linalg.norm(riemannian_gradient(X, mu) + beta_prime_zero(X, mu)) < 1e-13


def test_gradient_flow_equilibrium(make_measure):
    mu = make_measure()
    G = cartan_barycenter(mu).result
    path = gradient_flow_integrate(G, mu, 2.0, 0.25)
    for (_, A), (_, B) in zip(path, path[1:]):
        assert riem_dist(A, B) < 1e-9


def test_gradient_flow_scalar_ode():
    x0, horizon = 0.3, 25.0
    path = gradient_flow_integrate(np.array([[x0]]), SCALAR, horizon, 0.01)
    assert path[-1][0] == horizon
    # log x solves y' = L - y
    for t, X in path[::250]:
        exact = L4 + (np.log(x0) - L4) * np.exp(-t)
        assert abs(np.log(X[0, 0]) - exact) < 1e-2
    assert abs(path[-1][1][0, 0] - 4.0) < 1e-8


@pytest.mark.parametrize("dt", [0.1, 0.25, 0.5])
def test_gradient_flow_monotone_decrease(make_spd, make_measure, dt):
    mu = make_measure(m=3, n=5)
    G = cartan_barycenter(mu).result
    dists = [riem_dist(X, G) for _, X in gradient_flow_integrate(make_spd(3, 1.5), mu, 10.0, dt)]
    assert all(b <= a + 1e-12 for a, b in zip(dists, dists[1:]))
    assert dists[-1] < 1e-3 * dists[0]


def test_gradient_flow_arguments(make_measure):
    with pytest.raises(InvalidArgumentError):
        gradient_flow_integrate(np.eye(3), make_measure(), 1.0, 2.0)
