"""Hop-constrained routing with binary Hopfield networks."""

from .estimators import EffectiveDistances, HopfieldRouter
from .hopfield import (SolverConfig, SolverResult, async_sweep, build_weights, init_state,
                       lyapunov_energy, run_restarts, run_solver, set_symmetric_weight,
                       unit_index)
from .oracle import (OracleBudget, OverBudgetError, exhaustive_best_path,
                     exhaustive_min_energy, shortest_path)
from .route import ValidityReport, encode_route, extract_route, grid_view, route_cost
from .topology import (ConstellationTopology, PlanarTopology, build_constellation,
                       connectivity_matrix, cost_matrix, euclidean_distance_matrix,
                       paper_topology)
from .traffic import RngStream, effective_distances, random_permutation, sample_gaussian_matrix

__version__ = "0.1.0"
