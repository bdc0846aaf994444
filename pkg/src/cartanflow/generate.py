"""Seeded random SPD matrices and measures.

Streams come from numpy's Philox4x64-10 counter-based generator. The stream
for instance ``i`` under seed ``s`` uses the 128-bit key ``s + 2**64 * i``
with a zero counter, so any instance can be regenerated on its own.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .measure import DiscreteMeasure
from .spd import mat_exp, sym

WEIGHT_SCHEMES = ("uniform", "dirichlet")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    dim: int = 3
    support: int = 4
    spread: float = 0.7
    weights: str = "uniform"

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise InvalidArgumentError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.dim < 1:
            raise InvalidArgumentError(f"dim must be >= 1, got {self.dim}")
        if self.support < 1:
            raise InvalidArgumentError(f"support must be >= 1, got {self.support}")
        if not self.spread > 0:
            raise InvalidArgumentError(f"spread must be positive, got {self.spread}")
        if self.weights not in WEIGHT_SCHEMES:
            raise InvalidArgumentError(f"weights must be one of {WEIGHT_SCHEMES}, got {self.weights!r}")


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator for instance ``index`` under ``seed``."""
    if not 0 <= seed < 2**64 or not 0 <= index < 2**64:
        raise InvalidArgumentError("seed and index must be unsigned 64-bit integers")
    return np.random.Generator(np.random.Philox(key=seed + (index << 64), counter=0))


def random_symmetric(rng: np.random.Generator, m: int) -> np.ndarray:
    return sym(rng.standard_normal((m, m)))


def random_spd(rng: np.random.Generator, m: int, spread: float = 0.7) -> np.ndarray:
    """``exp(spread * S)`` with ``S`` the symmetric part of a standard normal matrix."""
    return mat_exp(spread * random_symmetric(rng, m))


def random_measure(
    rng: np.random.Generator, m: int, n: int, spread: float = 0.7, weights: str = "uniform"
) -> DiscreteMeasure:
    atoms = np.stack([random_spd(rng, m, spread) for _ in range(n)])
    if weights == "uniform":
        w = np.full(n, 1.0 / n)
    elif weights == "dirichlet":
        w = rng.dirichlet(np.ones(n))
        # Dirichlet draws may underflow to zero or sum to 1 +- a few ulp
        w = np.maximum(w, 1e-300)
        w = w / w.sum()
    else:
        raise InvalidArgumentError(f"unknown weight scheme {weights!r}")
    return DiscreteMeasure(atoms, w)


def random_commuting_measure(rng: np.random.Generator, m: int, n: int, spread: float = 0.7) -> DiscreteMeasure:
    """Diagonal atoms ``diag(exp(spread * z))``, ``z`` standard normal."""
    atoms = np.stack([np.diag(np.exp(spread * rng.standard_normal(m))) for _ in range(n)])
    return DiscreteMeasure(atoms, np.full(n, 1.0 / n))


def generate_measure(config: RunConfig) -> DiscreteMeasure:
    return random_measure(stream(config.seed), config.dim, config.support, config.spread, config.weights)
