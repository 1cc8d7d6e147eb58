"""Decoding activation states into hop-ordered routes."""

from dataclasses import dataclass, field

import numpy as np

from .hopfield import OFF_STATE, unit_index
from .validation import check_square_matrix, check_state


@dataclass
class ValidityReport:
    hop_violations: list = field(default_factory=list)
    repeated_nodes: list = field(default_factory=list)

    @property
    def valid(self):
        return not self.hop_violations and not self.repeated_nodes

    def to_dict(self):
        return {
            "valid": self.valid,
            "hop_violations": [dict(v) for v in self.hop_violations],
            "repeated_nodes": list(self.repeated_nodes),
        }


def grid_view(state, cfg):
    """Boolean ``(n_nodes, n_hops)`` grid, ``grid[node, hop]`` true when on."""
    s = check_state(state, cfg.n_units)
    return (s == 1).reshape(cfg.n_hops, cfg.n_nodes).T.copy()


def flatten_grid(grid):
    g = np.asarray(grid, dtype=bool)
    return np.where(g.T.reshape(-1), 1, OFF_STATE).astype(np.int8)


def encode_route(route, cfg):
    """State with +1 at ``(route[h], h)`` and -1 everywhere else."""
    s = np.full(cfg.n_units, OFF_STATE, dtype=np.int8)
    for hop, node in enumerate(route):
        s[unit_index(node, hop, cfg.n_nodes, cfg.n_hops)] = 1
    return s


def extract_route(state, cfg):
    """Read the route off a state without ever failing.

    Hops with exactly one active node contribute that node; hops with none
    or several are listed in the report and skipped.  Nodes active on more
    than one hop are reported as repeated.
    """
    grid = grid_view(state, cfg)
    route = []
    report = ValidityReport()
    seen = {}
    for hop in range(cfg.n_hops):
        active = np.flatnonzero(grid[:, hop]).tolist()
        if len(active) != 1:
            report.hop_violations.append({"hop": hop, "active_count": len(active)})
        else:
            route.append(active[0])
        for node in active:
            seen[node] = seen.get(node, 0) + 1
    report.repeated_nodes = sorted(n for n, c in seen.items() if c > 1)
    return route, report


def route_cost(route, distances):
    d = check_square_matrix(distances, "distances", allow_nan=True)
    route = list(route)
    if len(set(route)) != len(route):
        raise ValueError(f"route visits a node twice: {route}")
    if any(not 0 <= n < d.shape[0] for n in route):
        raise ValueError(f"route {route} has nodes outside [0, {d.shape[0]})")
    if len(route) < 2:
        return 0.0
    return float(sum(d[a, b] for a, b in zip(route[:-1], route[1:])))
