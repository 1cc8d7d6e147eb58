"""Binary Hopfield network over a node x hop grid.

Unit ``hop * n_nodes + node`` is on (+1) when the packet sits at ``node`` on
step ``hop``.  Weights encode three rules: a node may occupy only one hop, a
hop may hold only one node, and consecutive hops are pulled towards short
links.  Dynamics are asynchronous with a strict threshold, so every single
unit update is non-increasing in

    E(s) = -1/2 * s^T W s + threshold * sum(s)
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .traffic import DISTANCE_MODES, RngStream, random_permutation
from .validation import check_positive_int, check_seed, check_square_matrix, check_state

OFF_STATE = -1


@dataclass(frozen=True)
class SolverConfig:
    """Scalar parameters of one solve.  Defaults are the six-node demo values."""

    n_nodes: int = 6
    n_hops: int | None = None
    threshold: float = 31.0
    inhib_weight: float = -3.0
    sweeps: int = 36
    restarts: int = 1
    seed: int = 42
    distance_mode: str = "code-faithful"
    clamp_negative: bool = False
    early_stop: bool = False
    n_jobs: int = 1

    def __post_init__(self):
        check_positive_int(self.n_nodes, "n_nodes", minimum=2)
        if self.n_hops is None:
            object.__setattr__(self, "n_hops", self.n_nodes)
        check_positive_int(self.n_hops, "n_hops")
        check_positive_int(self.sweeps, "sweeps")
        check_positive_int(self.restarts, "restarts")
        check_positive_int(self.n_jobs, "n_jobs")
        check_seed(self.seed)
        if not np.isfinite(self.threshold):
            raise ValueError("threshold must be finite")
        if not self.inhib_weight < 0:
            raise ValueError(f"inhib_weight must be negative, got {self.inhib_weight}")
        if self.distance_mode not in DISTANCE_MODES:
            raise ValueError(f"distance_mode must be one of {DISTANCE_MODES}")
        object.__setattr__(self, "threshold", float(self.threshold))
        object.__setattr__(self, "inhib_weight", float(self.inhib_weight))

    @property
    def n_units(self):
        return self.n_nodes * self.n_hops


@dataclass
class SolverResult:
    energy_trace: np.ndarray
    flips_per_sweep: list
    best_sweep_index: int
    best_state: np.ndarray
    best_energy: float
    final_state: np.ndarray
    converged: bool
    restart_index: int = 0
    states_per_sweep: list | None = field(default=None, repr=False)


def unit_index(node, hop, n_nodes, n_hops=None):
    """Flat unit id of ``(node, hop)``; hops are the slow axis."""
    if n_hops is None:
        n_hops = n_nodes
    if not 0 <= node < n_nodes:
        raise IndexError(f"node {node} outside [0, {n_nodes})")
    if not 0 <= hop < n_hops:
        raise IndexError(f"hop {hop} outside [0, {n_hops})")
    return hop * n_nodes + node


def set_symmetric_weight(weights, u1, u2, value):
    """Write ``value`` at ``(u1, u2)`` and ``(u2, u1)`` in place and return ``weights``."""
    if u1 == u2:
        raise ValueError(f"refusing to set diagonal weight ({u1}, {u1})")
    weights[u1, u2] = value
    weights[u2, u1] = value
    return weights


def build_weights(eff_distances, cfg):
    """Symmetric constraint weights for ``cfg.n_units`` units.

    Pairs that share a node (different hops) or share a hop (different
    nodes) get ``cfg.inhib_weight``.  Different nodes on adjacent hops get
    ``-d[max(i, j), min(i, j)]``: when ``d`` is asymmetric the pair is
    written twice and the write from the larger node index lands last.
    Everything else, the diagonal included, is 0.
    """
    d = check_square_matrix(eff_distances, "eff_distances")
    N, H = cfg.n_nodes, cfg.n_hops
    if d.shape[0] != N:
        raise ValueError(f"distance matrix is {d.shape[0]}x{d.shape[0]} but n_nodes={N}")
    units = np.arange(N * H)
    node = units % N
    hop = units // N
    same_node = node[:, None] == node[None, :]
    same_hop = hop[:, None] == hop[None, :]
    adjacent = np.abs(hop[:, None] - hop[None, :]) == 1

    hi = np.maximum(node[:, None], node[None, :])
    lo = np.minimum(node[:, None], node[None, :])
    w = np.zeros((N * H, N * H))
    w[same_node & ~same_hop] = cfg.inhib_weight
    w[same_hop & ~same_node] = cfg.inhib_weight
    link = ~same_node & adjacent
    w[link] = -d[hi[link], lo[link]]
    return w


def init_state(cfg):
    return np.full(cfg.n_units, OFF_STATE, dtype=np.int8)


def lyapunov_energy(state, weights, threshold):
    s = np.asarray(state, dtype=float)
    return float(-0.5 * (s @ weights @ s) + threshold * s.sum())


def async_sweep(state, weights, threshold, rng, order=None, energies=None):
    """Update every unit once, in random order, using the live state.

    A unit turns on only when its net input strictly exceeds ``threshold``.
    Returns ``(new_state, flips)``.  If ``energies`` is a list, the energy
    after each single-unit update is appended to it.
    """
    s = np.array(state, dtype=np.int8)
    n = s.shape[0]
    if order is None:
        order = random_permutation(rng, n)
    sf = s.astype(float)
    flips = 0
    for u in order:
        net = weights[u] @ sf
        new = 1 if net > threshold else OFF_STATE
        if new != s[u]:
            s[u] = new
            sf[u] = new
            flips += 1
        if energies is not None:
            energies.append(lyapunov_energy(sf, weights, threshold))
    return s, flips


def run_solver(cfg, eff_distances, restart_index=0, keep_states=False, weights=None,
               update_energies=None):
    """Run ``cfg.sweeps`` asynchronous sweeps from the all-off state.

    The best state is the one at the lowest recorded per-sweep energy,
    earliest sweep on ties.  ``restart_index`` selects the random sub-stream,
    so ``run_solver(cfg, d, k)`` is exactly restart ``k`` of
    :func:`run_restarts`.
    """
    if weights is None:
        weights = build_weights(eff_distances, cfg)
    rng = RngStream(cfg.seed).substream("solve").substream(restart_index)
    state = init_state(cfg)
    energies, flips_list, states = [], [], []
    for _ in range(cfg.sweeps):
        state, flips = async_sweep(state, weights, cfg.threshold, rng, energies=update_energies)
        energies.append(lyapunov_energy(state, weights, cfg.threshold))
        flips_list.append(flips)
        states.append(state.copy())
        if cfg.early_stop and flips == 0:
            break
    trace = np.array(energies)
    best = int(np.argmin(trace))
    return SolverResult(
        energy_trace=trace,
        flips_per_sweep=flips_list,
        best_sweep_index=best,
        best_state=states[best],
        best_energy=float(trace[best]),
        final_state=state,
        converged=flips_list[-1] == 0,
        restart_index=restart_index,
        states_per_sweep=states if keep_states else None,
    )


def run_restarts(cfg, eff_distances, keep_states=False):
    """Best of ``cfg.restarts`` independent solves.

    Lowest ``best_energy`` wins, lowest restart index on ties.  With
    ``cfg.n_jobs > 1`` restarts run on a thread pool; the reduction does not
    depend on completion order.
    """
    weights = build_weights(eff_distances, cfg)

    def one(k):
        return run_solver(cfg, eff_distances, k, keep_states=keep_states, weights=weights)

    if cfg.n_jobs > 1 and cfg.restarts > 1:
        with ThreadPoolExecutor(max_workers=cfg.n_jobs) as pool:
            results = list(pool.map(one, range(cfg.restarts)))
    else:
        results = [one(k) for k in range(cfg.restarts)]
    return min(results, key=lambda r: (r.best_energy, r.restart_index))


def energy_bound(weights, threshold):
    """Upper bound on |E| over all bipolar states."""
    n = weights.shape[0]
    return 0.5 * float(np.abs(weights).sum()) + abs(threshold) * n


def is_fixed_point(state, weights, threshold):
    s = check_state(state, weights.shape[0]).astype(float)
    net = weights @ s
    target = np.where(net > threshold, 1, OFF_STATE)
    return bool(np.all(target == s))


def with_seed(cfg, seed):
    return replace(cfg, seed=seed)
