"""Exhaustive ground truth for small instances, and a Dijkstra baseline."""

import heapq
import itertools
from dataclasses import dataclass

import numpy as np

from .validation import check_square_matrix

_CHUNK = 1 << 14


class OverBudgetError(ValueError):
    """Raised when an enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class OracleBudget:
    max_units: int = 20
    max_nodes_permutation: int = 8


def _states_block(start, stop, n):
    # unit 0 is the most significant bit, bit 0 -> -1, so index order is lexicographic
    idx = np.arange(start, stop, dtype=np.int64)[:, None]
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)[None, :]
    bits = (idx >> shifts) & 1
    return (2 * bits - 1).astype(float)


def exhaustive_min_energy(weights, threshold, budget=OracleBudget()):
    """Global minimiser of the network energy over all ``2**n`` bipolar states.

    Ties go to the lexicographically smallest state with -1 < +1.
    """
    w = check_square_matrix(weights, "weights")
    n = w.shape[0]
    if n > budget.max_units:
        raise OverBudgetError(
            f"{n} units exceeds the exhaustive-energy cap of {budget.max_units} units"
        )
    total = 1 << n
    best_e, best_i = np.inf, -1
    for start in range(0, total, _CHUNK):
        S = _states_block(start, min(start + _CHUNK, total), n)
        e = -0.5 * np.einsum("ij,ij->i", S @ w, S) + threshold * S.sum(axis=1)
        k = int(np.argmin(e))
        if e[k] < best_e:
            best_e, best_i = float(e[k]), start + k
    state = _states_block(best_i, best_i + 1, n)[0].astype(np.int8)
    return state, best_e


def exhaustive_best_path(distances, budget=OracleBudget()):
    """Cheapest open path visiting every node once, by full enumeration.

    ``itertools.permutations`` yields in lexicographic order and only strict
    improvements replace the incumbent, so ties resolve lexicographically.
    """
    d = check_square_matrix(distances, "distances")
    n = d.shape[0]
    if n > budget.max_nodes_permutation:
        raise OverBudgetError(
            f"{n} nodes exceeds the permutation cap of {budget.max_nodes_permutation} nodes"
        )
    rows = d.tolist()
    best, best_cost = None, np.inf
    for perm in itertools.permutations(range(n)):
        c = sum(rows[a][b] for a, b in zip(perm[:-1], perm[1:]))
        if c < best_cost:
            best, best_cost = list(perm), c
    return best, float(best_cost)


def shortest_path(topo, src, dst):
    """Dijkstra over the constellation links.

    Returns ``(path, cost)``; an unreachable destination gives ``(None, inf)``.
    """
    n = topo.n_nodes
    for v in (src, dst):
        if not 0 <= v < n:
            raise IndexError(f"node {v} outside [0, {n})")
    neighbours = [np.flatnonzero(topo.adjacency[u]).tolist() for u in range(n)]
    dist = [np.inf] * n
    prev = [None] * n
    dist[src] = 0.0
    heap = [(0.0, src)]
    done = [False] * n
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == dst:
            break
        for v in neighbours[u]:
            alt = du + float(topo.link_costs[u, v])
            if alt < dist[v]:
                dist[v] = alt
                prev[v] = u
                heapq.heappush(heap, (alt, v))
    if not np.isfinite(dist[dst]):
        return None, float("inf")
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1], float(dist[dst])
