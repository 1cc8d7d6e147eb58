"""Command line entry point: ``hoproute {solve,demo-paper,oracle,topology}``.

Exit codes: 0 success (valid route), 2 the network settled on a state that
does not decode to a valid route (artifacts still written), 1 bad input.
"""

import argparse
import logging
import sys
from pathlib import Path

from . import io
from .hopfield import build_weights, run_restarts
from .oracle import (OracleBudget, OverBudgetError, exhaustive_best_path,
                     exhaustive_min_energy, shortest_path)
from .route import extract_route, grid_view, route_cost
from .topology import (ConstellationTopology, build_constellation, cost_matrix,
                       euclidean_distance_matrix, paper_topology)
from .traffic import RngStream, effective_distances, sample_gaussian_matrix

log = logging.getLogger("hoproute")

EXIT_OK, EXIT_ERROR, EXIT_INVALID = 0, 1, 2


class InputError(Exception):
    pass


def prepare_instance(values, base_dir, seed=None, throughput=None, throughput_label=None):
    """Build ``(cfg, base_distances, throughput, eff_distances, inputs)`` from config values."""
    cfg = io.solver_config(values, seed=seed)
    inputs = {}

    def resolve(key):
        p = Path(values[key])
        full = p if p.is_absolute() else Path(base_dir) / p
        if not full.is_file():
            raise InputError(f"{key}: file not found: {full}")
        inputs[key] = {"path": values[key], "sha256": io.sha256_file(full)}
        return full

    if "topology_file" in values:
        try:
            topo = io.load_topology_file(resolve("topology_file"))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if isinstance(topo, ConstellationTopology):
            base = cost_matrix(topo)
        else:
            base = euclidean_distance_matrix(topo)
    elif cfg.n_nodes == 6:
        base = euclidean_distance_matrix(paper_topology())
    else:
        raise InputError("topology_file is required unless n_nodes = 6 (built-in layout)")
    if base.shape[0] != cfg.n_nodes:
        raise InputError(f"topology has {base.shape[0]} nodes but n_nodes = {cfg.n_nodes}")

    if throughput is not None:
        inputs["throughput_file"] = {"path": throughput_label, "sha256": None}
    elif "throughput_file" in values:
        try:
            throughput = io.read_matrix_csv(resolve("throughput_file"))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        rng = RngStream(cfg.seed).substream("throughput")
        throughput = sample_gaussian_matrix(
            rng, cfg.n_nodes, values.get("throughput_mean", 0.5), values.get("throughput_std", 0.25)
        )
    if throughput.shape != base.shape:
        raise InputError(f"throughput is {throughput.shape}, expected {base.shape}")
    try:
        eff = effective_distances(base, throughput, cfg.distance_mode, cfg.clamp_negative)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return cfg, base, throughput, eff, inputs


def _cost_or_none(route, report, d):
    if not report.valid:
        return None
    return route_cost(route, d)


def write_solve_artifacts(out, command, cfg, base, eff, result, inputs):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    route, report = extract_route(result.best_state, cfg)
    route_doc = {
        "route": route,
        **report.to_dict(),
        "cost": _cost_or_none(route, report, base),
        "effective_cost": _cost_or_none(route, report, eff),
        "best_energy": result.best_energy,
        "best_sweep_index": result.best_sweep_index,
        "restart_index": result.restart_index,
        "converged": result.converged,
    }
    files = {
        "energy_trace.csv": io.energy_trace_csv_text(result),
        "activation_grid.csv": io.grid_csv_text(grid_view(result.best_state, cfg)),
        "route.json": io.json_text(route_doc),
        "energy_trace.svg": io.energy_svg(result.energy_trace),
    }
    for name, text in files.items():
        io.write_text(out / name, text)
    manifest = {
        "command": command,
        "config": io.config_snapshot(cfg),
        "seed": cfg.seed,
        "inputs": inputs,
        "output_dir": ".",
        "artifacts": [{"name": n, "sha256": io.sha256_file(out / n)} for n in sorted(files)],
    }
    io.write_text(out / "manifest.json", io.json_text(manifest))
    return route, report


def _load_values(path):
    if path is None:
        raise InputError("--config is required")
    return io.load_config(path), Path(path).resolve().parent


def cmd_solve(config_path, out, seed=None):
    values, base_dir = _load_values(config_path)
    cfg, base, _, eff, inputs = prepare_instance(values, base_dir, seed)
    result = run_restarts(cfg, eff)
    route, report = write_solve_artifacts(out, "solve", cfg, base, eff, result, inputs)
    print(f"best energy {result.best_energy:.6g} at sweep {result.best_sweep_index}; "
          f"route {route} ({'valid' if report.valid else 'invalid'})")
    return EXIT_OK if report.valid else EXIT_INVALID


def demo_paper_config(seed=None):
    with io.bundled_path("paper_demo.cfg").open() as fh:
        values = io.parse_config_text(fh.read(), "paper_demo.cfg")
    return prepare_instance(values, ".", seed, io.paper_throughput(),
                            "bundled:paper_throughput.csv")


def cmd_demo_paper(out, seed=None):
    cfg, base, _, eff, inputs = demo_paper_config(seed)
    result = run_restarts(cfg, eff)
    route, report = write_solve_artifacts(out, "demo-paper", cfg, base, eff, result, inputs)
    summary = "\n".join([
        "six-node Hopfield routing demo",
        f"seed: {cfg.seed}",
        f"sweeps: {len(result.energy_trace)}",
        f"best energy: {result.best_energy!r}",
        f"best sweep index: {result.best_sweep_index}",
        f"fixed point reached: {result.converged}",
        f"route: {route}",
        f"route valid: {report.valid}",
        f"route cost (euclidean): {_cost_or_none(route, report, base)}",
    ]) + "\n"
    io.write_text(Path(out) / "summary.txt", summary)
    print(summary, end="")
    return EXIT_OK


def cmd_oracle(config_path, out, seed=None, budget=OracleBudget()):
    values, base_dir = _load_values(config_path)
    cfg, base, _, eff, inputs = prepare_instance(values, base_dir, seed)
    weights = build_weights(eff, cfg)
    try:
        oracle_state, oracle_energy = exhaustive_min_energy(weights, cfg.threshold, budget)
        best_path, best_path_cost = exhaustive_best_path(eff, budget)
    except OverBudgetError as exc:
        raise InputError(str(exc)) from None
    result = run_restarts(cfg, eff)
    route, report = extract_route(result.best_state, cfg)
    solver_cost = _cost_or_none(route, report, eff)
    doc = {
        "config": io.config_snapshot(cfg),
        "inputs": inputs,
        "oracle_min_energy": oracle_energy,
        "oracle_state": oracle_state.tolist(),
        "optimal_path": best_path,
        "optimal_path_cost": best_path_cost,
        "solver_best_energy": result.best_energy,
        "energy_gap": result.best_energy - oracle_energy,
        "solver_route": route,
        "solver_route_valid": report.valid,
        "solver_route_cost": solver_cost,
        "path_gap": None if solver_cost is None or len(route) != cfg.n_nodes
        else solver_cost - best_path_cost,
    }
    Path(out).mkdir(parents=True, exist_ok=True)
    io.write_text(Path(out) / "oracle_report.json", io.json_text(doc))
    print(f"oracle min energy {oracle_energy:.6g}; solver {result.best_energy:.6g}; "
          f"gap {doc['energy_gap']:.3g}")
    return EXIT_OK


def seam_table(topo):
    """Shortest paths between slot-aligned satellites of the first and last plane."""
    twin = build_constellation(topo.planes, topo.sats_per_plane, not topo.seam,
                               topo.intra_cost, topo.inter_cost)
    rows = []
    for k in range(topo.sats_per_plane):
        src, dst = topo.node(0, k), topo.node(topo.planes - 1, k)
        path, cost = shortest_path(topo, src, dst)
        _, other = shortest_path(twin, src, dst)
        with_seam, without = (cost, other) if topo.seam else (other, cost)
        rows.append((k, src, dst, with_seam, without, path))
    return rows


def cmd_topology(out, planes, sats, seam, intra_cost, inter_cost, disconnected_cost=None):
    try:
        topo = build_constellation(planes, sats, seam, intra_cost, inter_cost)
        costs = cost_matrix(topo, disconnected_cost)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    io.write_matrix_csv(out / "adjacency.csv", topo.adjacency.astype(int))
    io.write_matrix_csv(out / "cost_matrix.csv", costs)
    lines = ["slot,src,dst,cost_with_seam,cost_without_seam,path"]
    for k, src, dst, a, b, path in seam_table(topo):
        lines.append(f"{k},{src},{dst},{a!r},{b!r},{' '.join(map(str, path))}")
    io.write_text(out / "seam_paths.csv", "\n".join(lines) + "\n")
    print(f"{topo.n_nodes} satellites, {len(topo.edges())} links "
          f"(seam {'on' if topo.seam else 'off'})")
    return EXIT_OK


def build_parser():
    def global_flags(suppress):
        p = argparse.ArgumentParser(add_help=False)
        # subcommand copies must not clobber values given before the subcommand
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--seed", type=int, default=dflt(None), help="override the config seed")
        p.add_argument("--out", default=dflt("out"), help="output directory")
        p.add_argument("--config", default=dflt(None), help="key = value config file")
        return p

    common = global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="hoproute", parents=[global_flags(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="solve a configured instance")
    sub.add_parser("demo-paper", parents=[common], help="run the bundled six-node demo")
    orc = sub.add_parser("oracle", parents=[common], help="compare the solver to exhaustive search")
    orc.add_argument("--max-units", type=int, default=OracleBudget.max_units)
    orc.add_argument("--max-nodes", type=int, default=OracleBudget.max_nodes_permutation)
    top = sub.add_parser("topology", parents=[common], help="emit a constellation graph")
    top.add_argument("--planes", type=int, required=True)
    top.add_argument("--sats-per-plane", type=int, required=True)
    top.add_argument("--seam", action=argparse.BooleanOptionalAction, default=True)
    top.add_argument("--intra-cost", type=float, default=1.0)
    top.add_argument("--inter-cost", type=float, default=1.0)
    top.add_argument("--disconnected-cost", type=float, default=None)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return cmd_solve(args.config, args.out, args.seed)
        if args.command == "demo-paper":
            return cmd_demo_paper(args.out, args.seed)
        if args.command == "oracle":
            budget = OracleBudget(args.max_units, args.max_nodes)
            return cmd_oracle(args.config, args.out, args.seed, budget)
        return cmd_topology(args.out, args.planes, args.sats_per_plane, args.seam,
                            args.intra_cost, args.inter_cost, args.disconnected_cost)
    except (InputError, io.ConfigError) as exc:
        log.error("%s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
