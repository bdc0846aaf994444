"""Spectral calculus and the affine-invariant geometry of SPD matrices.

Matrices are plain ``numpy.ndarray`` objects of shape ``(m, m)``; most
functions also accept stacks of shape ``(..., m, m)``. Validation happens at
the boundary (:func:`as_sym`, :func:`as_spd`); the kernels themselves assume
well-formed input.
"""
from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .errors import InvalidArgumentError, NotPositiveDefiniteError, NumericalFailure

SPD_RTOL = 1e-13
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


class SpectralDecomposition(NamedTuple):
    """Ascending eigenvalues and orthogonal eigenvector columns."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return sym((self.basis * self.eigenvalues[..., None, :]) @ np.swapaxes(self.basis, -1, -2))


def sym(M: np.ndarray) -> np.ndarray:
    """Symmetric part ``(M + M^T) / 2`` over the last two axes."""
    return 0.5 * (M + np.swapaxes(M, -1, -2))


def _check_square(M: np.ndarray) -> None:
    if M.ndim < 2 or M.shape[-1] != M.shape[-2] or M.shape[-1] < 1:
        raise InvalidArgumentError(f"expected square matrices, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidArgumentError("matrix has non-finite entries")


def as_sym(M) -> np.ndarray:
    """Return a symmetrized float copy of ``M``."""
    M = np.array(M, dtype=float)
    _check_square(M)
    return sym(M)


def as_spd(A, rtol: float = SPD_RTOL) -> np.ndarray:
    """Return a symmetrized float copy of ``A`` after checking definiteness.

    Raises
    ------
    NotPositiveDefiniteError
        If the smallest eigenvalue is not above ``rtol`` times the largest.
    """
    A = as_sym(A)
    w = np.linalg.eigvalsh(A)
    lo, hi = w[..., 0], w[..., -1]
    if np.any(hi <= 0) or np.any(lo <= rtol * hi):
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite (eigenvalue range [{np.min(lo):.3e}, {np.max(hi):.3e}])"
        )
    return A


def is_spd(A, rtol: float = SPD_RTOL) -> bool:
    try:
        as_spd(A, rtol)
    except InvalidArgumentError:
        return False
    return True


def jacobi_eigh(
    M: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> SpectralDecomposition:
    """Cyclic Jacobi eigensolver for a single symmetric matrix.

    Sweeps over all ``(p, q)`` pairs until the off-diagonal Frobenius norm
    drops to ``tol * ||M||_F``.

    Raises
    ------
    NumericalFailure
        If the threshold is not met after ``max_sweeps`` sweeps.
    """
    a = sym(np.array(M, dtype=float))
    m = a.shape[0]
    V = np.eye(m)
    scale = np.linalg.norm(a)
    threshold = tol * scale

    def off(a):
        # summed directly: ||a||^2 - ||diag a||^2 cancels catastrophically near convergence
        return np.linalg.norm(a - np.diag(np.diag(a)))

    for _ in range(max_sweeps + 1):
        if off(a) <= threshold:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # Golub & Van Loan, symmetric Schur 2x2
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0:
                    t = 1.0 / (tau + np.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise NumericalFailure(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], V[:, order])


def sym_eig(M: np.ndarray, method: str = "lapack") -> SpectralDecomposition:
    """Eigendecomposition of a symmetric matrix (or stack), ascending order.

    ``method="lapack"`` uses ``numpy.linalg.eigh`` and accepts stacks;
    ``method="jacobi"`` runs :func:`jacobi_eigh` matrix by matrix.
    """
    M = sym(np.asarray(M, dtype=float))
    if method == "lapack":
        w, V = np.linalg.eigh(M)
        return SpectralDecomposition(w, V)
    if method == "jacobi":
        if M.ndim == 2:
            return jacobi_eigh(M)
        flat = M.reshape(-1, *M.shape[-2:])
        parts = [jacobi_eigh(x) for x in flat]
        w = np.stack([p.eigenvalues for p in parts]).reshape(M.shape[:-1])
        V = np.stack([p.basis for p in parts]).reshape(M.shape)
        return SpectralDecomposition(w, V)
    raise InvalidArgumentError(f"unknown eigensolver {method!r}")


def mat_fn(A: np.ndarray, f: Callable[[np.ndarray], np.ndarray], method: str = "lapack") -> np.ndarray:
    """Apply the scalar function ``f`` through the spectral decomposition."""
    w, V = sym_eig(A, method)
    return sym((V * f(w)[..., None, :]) @ np.swapaxes(V, -1, -2))


def mat_log(A: np.ndarray) -> np.ndarray:
    return mat_fn(A, np.log)


def mat_exp(H: np.ndarray) -> np.ndarray:
    return mat_fn(H, np.exp)


def mat_pow(A: np.ndarray, t: float) -> np.ndarray:
    """Principal real power ``A^t``; any real ``t``."""
    return mat_fn(A, lambda w: np.power(w, t))


def mat_sqrt(A: np.ndarray) -> np.ndarray:
    return mat_fn(A, np.sqrt)


def mat_invsqrt(A: np.ndarray) -> np.ndarray:
    return mat_fn(A, lambda w: 1.0 / np.sqrt(w))


def mat_inv(A: np.ndarray) -> np.ndarray:
    return mat_fn(A, np.reciprocal)


def congruence(M: np.ndarray, A: np.ndarray) -> np.ndarray:
    """``M A M^T`` for invertible ``M``; broadcasts over stacks of ``A``.

    Raises
    ------
    InvalidArgumentError
        If ``M`` is numerically singular.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim == 2:
        s = np.linalg.svd(M, compute_uv=False)
        if s[-1] <= np.finfo(float).eps * max(s[0], 1.0) * M.shape[0]:
            raise InvalidArgumentError("congruence by a singular matrix")
    return sym(M @ A @ np.swapaxes(M, -1, -2))


def whiten(X: np.ndarray, A: np.ndarray) -> np.ndarray:
    """``X^{-1/2} A X^{-1/2}``; ``A`` may be a stack."""
    R = mat_invsqrt(X)
    return sym(R @ A @ R)


def geodesic(A: np.ndarray, B: np.ndarray, t: float) -> np.ndarray:
    r"""Weighted geometric mean :math:`A \#_t B`, defined for every real ``t``.

    .. math::
        A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}

    ``B`` may be a stack of matrices sharing the base point ``A``. The
    endpoints ``t = 0`` and ``t = 1`` are returned exactly.
    """
    B = np.asarray(B, dtype=float)
    if t == 0:
        return np.broadcast_to(sym(np.asarray(A, dtype=float)), B.shape).copy()
    if t == 1:
        return sym(B)
    w, V = np.linalg.eigh(sym(A))
    sq = (V * np.sqrt(w)) @ V.T
    isq = (V / np.sqrt(w)) @ V.T
    inner = mat_pow(sym(isq @ B @ isq), t)
    return sym(sq @ inner @ sq)


def riem_dist(A: np.ndarray, B: np.ndarray) -> np.ndarray | float:
    """Affine-invariant distance ``||log(A^{-1/2} B A^{-1/2})||_F``.

    Broadcasts over stacks; returns a float for a single pair.
    """
    w = np.linalg.eigvalsh(whiten(A, B))
    d = np.sqrt(np.sum(np.log(w) ** 2, axis=-1))
    return float(d) if np.ndim(d) == 0 else d


def pairwise_dist(As: np.ndarray, Bs: np.ndarray) -> np.ndarray:
    """Distance matrix ``D[i, j] = riem_dist(As[i], Bs[j])``."""
    R = mat_invsqrt(As)
    W = sym(R[:, None] @ Bs[None, :] @ R[:, None])
    w = np.linalg.eigvalsh(W)
    return np.sqrt(np.sum(np.log(w) ** 2, axis=-1))


def singular_values(M: np.ndarray) -> np.ndarray:
    """Singular values in descending order."""
    return np.linalg.svd(np.asarray(M, dtype=float), compute_uv=False)


def frobenius(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, "fro"))


def operator_norm(M: np.ndarray) -> float:
    return float(singular_values(M)[0])


def ky_fan(M: np.ndarray, k: int) -> float:
    """Sum of the ``k`` largest singular values, ``1 <= k <= m``."""
    m = np.shape(M)[-1]
    if not 1 <= k <= m:
        raise InvalidArgumentError(f"Ky Fan index {k} outside 1..{m}")
    return float(np.sum(singular_values(M)[:k]))


def schatten(M: np.ndarray, p: float) -> float:
    """Schatten ``p``-norm, ``p >= 1`` (``p = inf`` gives the operator norm)."""
    if not p >= 1:
        raise InvalidArgumentError(f"Schatten exponent must be >= 1, got {p}")
    s = singular_values(M)
    if np.isinf(p):
        return float(s[0])
    return float(np.sum(s**p) ** (1.0 / p))


def loewner_leq(A: np.ndarray, B: np.ndarray, slack: float = 0.0) -> bool:
    """True iff ``B - A`` has smallest eigenvalue ``>= -slack``."""
    if np.shape(A) != np.shape(B):
        raise InvalidArgumentError(f"shape mismatch {np.shape(A)} vs {np.shape(B)}")
    return bool(np.linalg.eigvalsh(sym(np.asarray(B) - np.asarray(A)))[0] >= -slack)
