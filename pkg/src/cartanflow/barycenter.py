"""Cartan (Karcher) barycenter of a discrete measure and related maps.

The barycenter is computed by the exponential-map fixed-point iteration

    X <- X^{1/2} exp(step * R(X)) X^{1/2},   R(X) = sum_j w_j log(X^{-1/2} A_j X^{-1/2}),

which is Riemannian gradient descent on ``Z -> (1/2) sum_j w_j d^2(Z, A_j)``.
The residual ``R`` vanishes exactly at the barycenter.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConvergenceError, InvalidArgumentError
from .measure import DiscreteMeasure, dirac, log_mean, mixture
from .spd import as_spd, mat_exp, mat_log, sym

Init = Union[str, np.ndarray]
_INITS = ("log_euclidean", "first_atom")

STALL_PATIENCE = 10
MIN_STEP = 1.0 / 16.0


@dataclass(frozen=True)
class SolverOptions:
    """Stopping rule and starting point for :func:`cartan_barycenter`.

    ``init`` is ``"log_euclidean"``, ``"first_atom"`` or an explicit SPD matrix.
    """

    tol: float = 1e-12
    max_iter: int = 500
    step: float = 1.0
    init: Init = "log_euclidean"

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidArgumentError(f"tol must be positive, got {self.tol}")
        if not (isinstance(self.max_iter, (int, np.integer)) and self.max_iter >= 1):
            raise InvalidArgumentError(f"max_iter must be a positive integer, got {self.max_iter}")
        if not 0 < self.step <= 1:
            raise InvalidArgumentError(f"step must lie in (0, 1], got {self.step}")
        if isinstance(self.init, str):
            if self.init not in _INITS:
                raise InvalidArgumentError(f"unknown init {self.init!r}")
        else:
            object.__setattr__(self, "init", as_spd(self.init))


@dataclass(frozen=True)
class SolverReport:
    result: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool


def _roots(X):
    w, V = np.linalg.eigh(sym(X))
    s = np.sqrt(w)
    return (V * s) @ V.T, (V / s) @ V.T


def _residual(isq, mu):
    W = sym(isq @ mu.atoms @ isq)
    return np.einsum("j,jkl->kl", mu.weights, mat_log(W))


def karcher_residual(X: np.ndarray, mu: DiscreteMeasure) -> np.ndarray:
    """``sum_j w_j log(X^{-1/2} A_j X^{-1/2})``; zero exactly at the barycenter."""
    if np.shape(X) != (mu.dim, mu.dim):
        raise InvalidArgumentError(f"matrix of shape {np.shape(X)} does not match measure dimension {mu.dim}")
    return _residual(_roots(X)[1], mu)


def _initial(mu, init):
    if isinstance(init, np.ndarray):
        if init.shape != (mu.dim, mu.dim):
            raise InvalidArgumentError("explicit init has the wrong dimension")
        return init.copy()
    if init == "first_atom":
        return np.array(mu.atoms[0])
    return mat_exp(log_mean(mu))


def cartan_barycenter(mu: DiscreteMeasure, opts: SolverOptions | None = None) -> SolverReport:
    """Solve the Karcher equation for ``mu``.

    Parameters
    ----------
    mu : DiscreteMeasure
    opts : SolverOptions, optional

    Returns
    -------
    SolverReport
        ``converged`` is False when ``max_iter`` iterations did not bring the
        residual Frobenius norm down to ``tol``; the last iterate is returned.

    Notes
    -----
    If the residual norm has not improved for 10 consecutive iterations the
    step is halved, down to 1/16. A further stall restarts once from the
    first atom with the original step.
    """
    opts = opts or SolverOptions()
    X = _initial(mu, opts.init)
    step = opts.step
    restarted = opts.init == "first_atom" if isinstance(opts.init, str) else False
    best = np.inf
    stall = 0
    r = np.inf
    for it in range(opts.max_iter + 1):
        sq, isq = _roots(X)
        R = _residual(isq, mu)
        r = float(np.linalg.norm(R))
        if r <= opts.tol:
            return SolverReport(X, r, it, True)
        if it == opts.max_iter:
            break
        if r < best:
            best, stall = r, 0
        else:
            stall += 1
        if stall >= STALL_PATIENCE:
            stall, best = 0, np.inf
            if step > MIN_STEP:
                step = max(step / 2.0, MIN_STEP)
            elif not restarted:
                restarted = True
                step = opts.step
                X = np.array(mu.atoms[0])
                continue
        X = sym(sq @ mat_exp(step * R) @ sq)
    return SolverReport(X, r, opts.max_iter, False)


def solve(mu: DiscreteMeasure, opts: SolverOptions | None = None, context: str = "") -> SolverReport:
    """:func:`cartan_barycenter`, raising :class:`ConvergenceError` instead of returning an unconverged report."""
    report = cartan_barycenter(mu, opts)
    if not report.converged:
        raise ConvergenceError(report, context)
    return report


def resolvent(lam: float, mu: DiscreteMeasure, X: np.ndarray, opts: SolverOptions | None = None) -> SolverReport:
    """Barycenter of ``lam/(lam+1) * mu + 1/(lam+1) * delta_X``; ``lam = 0`` returns ``X``."""
    if not lam >= 0:
        raise InvalidArgumentError(f"resolvent parameter must be >= 0, got {lam}")
    X = np.asarray(X, dtype=float)
    if lam == 0:
        return SolverReport(X.copy(), 0.0, 0, True)
    return cartan_barycenter(mixture(mu, dirac(X), lam / (lam + 1.0)), opts)


def riemannian_gradient(X: np.ndarray, mu: DiscreteMeasure) -> np.ndarray:
    """Riemannian gradient of ``psi(X) = (1/2) sum_j w_j d^2(X, A_j)``, i.e. ``-X^{1/2} R(X) X^{1/2}``."""
    sq, isq = _roots(X)
    return -sym(sq @ _residual(isq, mu) @ sq)


def gradient_flow_integrate(
    X0: np.ndarray, mu: DiscreteMeasure, horizon: float, dt: float
) -> list[tuple[float, np.ndarray]]:
    """Integrate ``dX/dt = -grad psi(X)`` with explicit geodesic Euler steps.

    Returns the samples ``(t, X_t)`` from ``t = 0`` to ``t = horizon``; the
    final step is shortened so the last sample lands on ``horizon``.
    """
    if not dt > 0 or dt > horizon:
        raise InvalidArgumentError(f"need 0 < dt <= horizon, got dt={dt}, horizon={horizon}")
    X = as_spd(X0)
    t = 0.0
    out = [(t, X)]
    nsteps = int(np.ceil(horizon / dt - 1e-9))
    for k in range(nsteps):
        h = dt if k < nsteps - 1 else horizon - t
        sq, isq = _roots(X)
        X = sym(sq @ mat_exp(h * _residual(isq, mu)) @ sq)
        t = (k + 1) * dt if k < nsteps - 1 else horizon
        out.append((t, X))
    return out
