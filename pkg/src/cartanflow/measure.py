"""Finitely supported probability measures on SPD matrices and their push-forwards."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .spd import as_spd, geodesic, mat_log, mat_pow, riem_dist, whiten

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """``sum_j weights[j] * delta(atoms[j])``.

    Parameters
    ----------
    atoms : array_like, shape (n, m, m)
        SPD support points; symmetrized and validated on construction.
    weights : array_like, shape (n,)
        Strictly positive masses summing to one.

    Atoms are never merged, even when two of them coincide.
    """

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        atoms = np.array(self.atoms, dtype=float)
        if atoms.ndim == 2:
            atoms = atoms[None]
        if atoms.ndim != 3 or atoms.shape[0] < 1:
            raise InvalidArgumentError(f"atoms must have shape (n, m, m), got {atoms.shape}")
        atoms = as_spd(atoms)
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if weights.shape[0] != atoms.shape[0]:
            raise InvalidArgumentError(f"{atoms.shape[0]} atoms but {weights.shape[0]} weights")
        if not np.all(weights > 0):
            raise InvalidArgumentError("weights must be strictly positive")
        if abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidArgumentError(f"weights sum to {weights.sum():.17g}, not 1")
        atoms.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return self.atoms.shape[-1]

    @property
    def size(self) -> int:
        return self.atoms.shape[0]

    def __len__(self) -> int:
        return self.size

    def is_uniform(self, tol: float = 1e-12) -> bool:
        return bool(np.all(np.abs(self.weights - 1.0 / self.size) <= tol))

    def with_atoms(self, atoms: np.ndarray) -> "DiscreteMeasure":
        """Same weights, new support (the shape of every push-forward)."""
        return DiscreteMeasure(atoms, self.weights)

    @classmethod
    def uniform(cls, atoms) -> "DiscreteMeasure":
        atoms = np.asarray(atoms, dtype=float)
        n = 1 if atoms.ndim == 2 else atoms.shape[0]
        return cls(atoms, np.full(n, 1.0 / n))


def _check_dim(mu: DiscreteMeasure, X: np.ndarray) -> None:
    if np.shape(X) != (mu.dim, mu.dim):
        raise InvalidArgumentError(f"matrix of shape {np.shape(X)} does not match measure dimension {mu.dim}")


def dirac(A) -> DiscreteMeasure:
    """Point mass at ``A``."""
    return DiscreteMeasure(np.asarray(A, dtype=float)[None], [1.0])


def pushforward(mu: DiscreteMeasure, f) -> DiscreteMeasure:
    """Image measure ``f_* mu`` for a map ``f`` acting on a stack of atoms."""
    return mu.with_atoms(f(mu.atoms))


def power_pushforward(mu: DiscreteMeasure, t: float) -> DiscreteMeasure:
    """``mu^t``: every atom raised to the real power ``t`` (``t = 0`` sends all atoms to ``I``)."""
    return pushforward(mu, lambda A: mat_pow(A, t))


def geometric_flow(X: np.ndarray, mu: DiscreteMeasure, t: float) -> DiscreteMeasure:
    r"""Push ``mu`` forward along :math:`A \mapsto X \#_t A`.

    At ``t = 0`` every atom becomes ``X``; the weight vector is kept as is.
    """
    _check_dim(mu, X)
    return pushforward(mu, lambda A: geodesic(X, A, t))


def congruence_pushforward(mu: DiscreteMeasure, X: np.ndarray) -> DiscreteMeasure:
    """Push ``mu`` forward along ``A -> X^{-1/2} A X^{-1/2}``."""
    _check_dim(mu, X)
    return pushforward(mu, lambda A: whiten(X, A))


def mixture(mu: DiscreteMeasure, nu: DiscreteMeasure, a: float) -> DiscreteMeasure:
    """Convex combination ``a * mu + (1 - a) * nu`` with concatenated supports.

    A component with zero mass is dropped entirely.
    """
    if not 0.0 <= a <= 1.0:
        raise InvalidArgumentError(f"mixing coefficient {a} outside [0, 1]")
    if mu.dim != nu.dim:
        raise InvalidArgumentError(f"dimension mismatch {mu.dim} vs {nu.dim}")
    if a == 1.0:
        return mu
    if a == 0.0:
        return nu
    return DiscreteMeasure(
        np.concatenate([mu.atoms, nu.atoms]),
        np.concatenate([a * mu.weights, (1.0 - a) * nu.weights]),
    )


def moment_integral(mu: DiscreteMeasure, Y: np.ndarray) -> float:
    """First moment ``sum_j w_j d(A_j, Y)``."""
    _check_dim(mu, Y)
    return float(mu.weights @ np.atleast_1d(riem_dist(Y, mu.atoms)))


def log_mean(mu: DiscreteMeasure) -> np.ndarray:
    """Weighted mean of the matrix logarithms, ``sum_j w_j log A_j``."""
    return np.einsum("j,jkl->kl", mu.weights, mat_log(mu.atoms))
