"""Planar node layouts and orbital-plane constellation graphs.

Constellation satellites are numbered plane-major: satellite ``k`` of plane
``p`` is node ``p * sats_per_plane + k``.  Each plane is a ring; neighbouring
planes are joined slot-to-slot.  With the seam enabled the first and last
planes are not joined, so the planes form a path instead of a ring.
"""

from dataclasses import dataclass, field

import numpy as np

PAPER_LOCATIONS = ((0, 3), (2, 5), (5, 3), (3, 2), (4, 0), (2, 1))


@dataclass(frozen=True)
class PlanarTopology:
    locations: np.ndarray

    def __post_init__(self):
        loc = np.asarray(self.locations, dtype=float)
        if loc.ndim != 2 or loc.shape[1] != 2:
            raise ValueError(f"locations must be an (N, 2) array, got shape {loc.shape}")
        if loc.shape[0] < 2:
            raise ValueError("a planar topology needs at least 2 nodes")
        if not np.all(np.isfinite(loc)):
            raise ValueError("locations must be finite")
        loc.setflags(write=False)
        object.__setattr__(self, "locations", loc)

    @property
    def n_nodes(self):
        return self.locations.shape[0]


def paper_topology():
    """The six-node layout used in the original experiment (0-based ids)."""
    return PlanarTopology(np.array(PAPER_LOCATIONS, dtype=float))


def euclidean_distance_matrix(topo):
    loc = topo.locations
    diff = loc[:, None, :] - loc[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


@dataclass(frozen=True)
class ConstellationTopology:
    planes: int
    sats_per_plane: int
    seam: bool
    intra_cost: float
    inter_cost: float
    adjacency: np.ndarray = field(repr=False)
    link_costs: np.ndarray = field(repr=False)

    @property
    def n_nodes(self):
        return self.planes * self.sats_per_plane

    def node(self, plane, slot):
        if not (0 <= plane < self.planes and 0 <= slot < self.sats_per_plane):
            raise IndexError(f"(plane={plane}, slot={slot}) outside the constellation grid")
        return plane * self.sats_per_plane + slot

    def edges(self):
        """Undirected links as sorted ``(u, v)`` pairs with ``u < v``."""
        iu, ju = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(iu.tolist(), ju.tolist()))


def build_constellation(planes, sats_per_plane, seam=True, intra_cost=1.0, inter_cost=1.0):
    if planes < 2:
        raise ValueError(f"planes must be >= 2, got {planes}")
    if sats_per_plane < 2:
        raise ValueError(f"sats_per_plane must be >= 2, got {sats_per_plane}")
    if not (intra_cost > 0 and inter_cost > 0):
        raise ValueError("link costs must be positive")
    P, S = int(planes), int(sats_per_plane)
    n = P * S
    adj = np.zeros((n, n), dtype=bool)
    cost = np.zeros((n, n))

    def link(u, v, c):
        if u == v:
            return
        adj[u, v] = adj[v, u] = True
        cost[u, v] = cost[v, u] = c

    for p in range(P):
        for k in range(S):
            link(p * S + k, p * S + (k + 1) % S, intra_cost)
    for p in range(P):
        q = (p + 1) % P
        if seam and {p, q} == {0, P - 1}:
            continue
        for k in range(S):
            link(p * S + k, q * S + k, inter_cost)

    adj.setflags(write=False)
    cost.setflags(write=False)
    return ConstellationTopology(P, S, bool(seam), float(intra_cost), float(inter_cost), adj, cost)


def connectivity_matrix(topo):
    return topo.adjacency.copy()


def cost_matrix(topo, disconnected_cost=None):
    """Full distance matrix for a constellation.

    Unlinked pairs receive ``disconnected_cost``; the default is ten times the
    largest link cost.  ``np.inf`` is accepted for graph algorithms but will
    be rejected by the Hopfield weight builder.
    """
    max_link = float(topo.link_costs.max())
    if disconnected_cost is None:
        disconnected_cost = 10.0 * max_link
    if np.isfinite(disconnected_cost) and disconnected_cost <= max_link:
        raise ValueError(
            f"disconnected_cost {disconnected_cost} must exceed the largest link cost {max_link}"
        )
    d = np.where(topo.adjacency, topo.link_costs, disconnected_cost)
    np.fill_diagonal(d, 0.0)
    return d
