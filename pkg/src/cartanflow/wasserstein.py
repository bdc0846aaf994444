"""Exact 1-Wasserstein distance between finitely supported measures.

The transportation LP is solved with a primal network simplex on the
bipartite supply/demand graph. A basis is a spanning tree of ``n + k - 1``
cells; node potentials give reduced costs, and Bland's smallest-index rule
picks both the entering and the leaving cell so degenerate pivots cannot
cycle.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NumericalFailure
from .measure import DiscreteMeasure
from .spd import pairwise_dist

DROP_WEIGHT = 1e-15
MAX_ORACLE_SUPPORT = 9


@dataclass(frozen=True)
class CouplingPlan:
    """Transport masses ``mass[i, j]`` from atom ``i`` of the source to atom ``j`` of the target."""

    mass: np.ndarray

    @property
    def rows(self) -> int:
        return self.mass.shape[0]

    @property
    def cols(self) -> int:
        return self.mass.shape[1]

    def marginal_error(self, row_weights, col_weights) -> float:
        """Largest deviation of the plan's marginals from the given weights."""
        return float(
            max(
                np.max(np.abs(self.mass.sum(axis=1) - row_weights)),
                np.max(np.abs(self.mass.sum(axis=0) - col_weights)),
            )
        )

    def entries(self):
        """Yield ``(row, col, mass)`` for the cells carrying positive mass."""
        for i, j in zip(*np.nonzero(self.mass > 0)):
            yield int(i), int(j), float(self.mass[i, j])


def _northwest_corner(supply, demand):
    n, k = len(supply), len(demand)
    s, d = supply.copy(), demand.copy()
    flow = np.zeros((n, k))
    basis = []
    i = j = 0
    while True:
        x = min(s[i], d[j])
        flow[i, j] = x
        basis.append((i, j))
        s[i] -= x
        d[j] -= x
        if i == n - 1 and j == k - 1:
            break
        if (s[i] <= d[j] and i < n - 1) or j == k - 1:
            i += 1
        else:
            j += 1
    return flow, basis


def _tree_adjacency(basis, n, k):
    # nodes 0..n-1 are rows, n..n+k-1 are columns
    adj = [[] for _ in range(n + k)]
    for i, j in basis:
        adj[i].append(n + j)
        adj[n + j].append(i)
    return adj


def _potentials(cost, adj, n, k):
    u = np.zeros(n)
    v = np.zeros(k)
    seen = np.zeros(n + k, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if seen[b]:
                continue
            seen[b] = True
            if a < n:
                v[b - n] = cost[a, b - n] - u[a]
            else:
                u[b] = cost[b, a - n] - v[a - n]
            queue.append(b)
    if not seen.all():
        raise NumericalFailure("transportation basis is not a spanning tree")
    return u, v


def _tree_path(adj, start, goal):
    parent = {start: None}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        if a == goal:
            break
        for b in adj[a]:
            if b not in parent:
                parent[b] = a
                queue.append(b)
    path = [goal]
    while path[-1] != start:
        path.append(parent[path[-1]])
    return path


def transport_simplex(supply, demand, cost, max_pivots: int | None = None) -> np.ndarray:
    """Optimal plan of the balanced transportation problem.

    Parameters
    ----------
    supply : array_like, shape (n,)
    demand : array_like, shape (k,)
        Nonnegative marginals with equal totals.
    cost : array_like, shape (n, k)
    max_pivots : int, optional
        Pivot cap; defaults to a generous multiple of ``n * k``.

    Returns
    -------
    flow : ndarray, shape (n, k)

    Raises
    ------
    NumericalFailure
        If the pivot cap is reached.
    """
    supply = np.asarray(supply, dtype=float)
    demand = np.asarray(demand, dtype=float)
    cost = np.asarray(cost, dtype=float)
    n, k = len(supply), len(demand)
    if cost.shape != (n, k):
        raise InvalidArgumentError(f"cost shape {cost.shape} does not match marginals ({n}, {k})")
    if max_pivots is None:
        max_pivots = 50 * n * k + 1000
    eps = 1e-12 * max(1.0, float(np.max(np.abs(cost))) if cost.size else 1.0)

    flow, basis = _northwest_corner(supply, demand)
    in_basis = np.zeros((n, k), dtype=bool)
    for cell in basis:
        in_basis[cell] = True

    for _ in range(max_pivots):
        adj = _tree_adjacency(basis, n, k)
        u, v = _potentials(cost, adj, n, k)
        reduced = cost - u[:, None] - v[None, :]
        candidates = np.flatnonzero((reduced < -eps) & ~in_basis)
        if candidates.size == 0:
            return flow
        ei, ej = divmod(int(candidates[0]), k)

        # cycle: entering cell, then the tree path from column ej back to row ei
        path = _tree_path(adj, n + ej, ei)
        cells = []
        for a, b in zip(path[:-1], path[1:]):
            cells.append((b, a - n) if a >= n else (a, b - n))
        minus = cells[0::2]
        plus = cells[1::2]
        theta = min(flow[c] for c in minus)
        leaving = min((c for c in minus if flow[c] == theta), key=lambda c: c[0] * k + c[1])

        flow[ei, ej] += theta
        for c in plus:
            flow[c] += theta
        for c in minus:
            flow[c] -= theta
        flow[leaving] = 0.0
        basis.remove(leaving)
        in_basis[leaving] = False
        basis.append((ei, ej))
        in_basis[ei, ej] = True

    raise NumericalFailure(f"network simplex exceeded {max_pivots} pivots")


def cost_matrix(mu: DiscreteMeasure, nu: DiscreteMeasure) -> np.ndarray:
    """Pairwise Riemannian distances between the supports of ``mu`` and ``nu``."""
    if mu.dim != nu.dim:
        raise InvalidArgumentError(f"dimension mismatch {mu.dim} vs {nu.dim}")
    return pairwise_dist(mu.atoms, nu.atoms)


def d1w(mu: DiscreteMeasure, nu: DiscreteMeasure) -> tuple[float, CouplingPlan]:
    """Exact 1-Wasserstein distance and an optimal coupling.

    Atoms lighter than ``1e-15`` are left out of the LP and receive no mass
    in the returned plan.
    """
    cost = cost_matrix(mu, nu)
    rows = np.flatnonzero(mu.weights >= DROP_WEIGHT)
    cols = np.flatnonzero(nu.weights >= DROP_WEIGHT)
    sub = transport_simplex(mu.weights[rows], nu.weights[cols], cost[np.ix_(rows, cols)])
    mass = np.zeros_like(cost)
    mass[np.ix_(rows, cols)] = sub
    return float(np.sum(mass * cost)), CouplingPlan(mass)


def permutation_oracle(mu: DiscreteMeasure, nu: DiscreteMeasure) -> float:
    """Brute-force ``min_sigma (1/n) sum_j d(A_j, B_sigma(j))`` over all permutations.

    Only for uniform measures of equal support size ``n <= 9``.
    """
    n = mu.size
    if nu.size != n:
        raise InvalidArgumentError(f"support sizes differ ({n} vs {nu.size})")
    if n > MAX_ORACLE_SUPPORT:
        raise InvalidArgumentError(f"support size {n} exceeds the oracle limit {MAX_ORACLE_SUPPORT}")
    if not (mu.is_uniform() and nu.is_uniform()):
        raise InvalidArgumentError("permutation oracle needs uniform weights")
    cost = cost_matrix(mu, nu)
    perms = np.array(list(itertools.permutations(range(n))))
    totals = cost[np.arange(n)[None, :], perms].sum(axis=1)
    return float(totals.min() / n)
