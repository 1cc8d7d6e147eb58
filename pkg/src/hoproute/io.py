"""Config, CSV, JSON and SVG reading/writing.

CSV files use ``.`` decimals, ``,`` separators and LF line endings.  Floats are
written with ``repr`` so they load back bit-for-bit.
"""

import hashlib
import json
from dataclasses import asdict
from importlib import resources
from pathlib import Path

import numpy as np

from .hopfield import SolverConfig
from .topology import PlanarTopology, build_constellation

SOLVER_KEYS = (
    "n_nodes", "n_hops", "threshold", "inhib_weight", "sweeps", "restarts", "seed",
    "distance_mode", "clamp_negative",
)
FILE_KEYS = ("throughput_file", "topology_file")
EXTRA_KEYS = ("early_stop", "n_jobs", "throughput_mean", "throughput_std")

_INT_KEYS = {"n_nodes", "n_hops", "sweeps", "restarts", "seed", "n_jobs"}
_FLOAT_KEYS = {"threshold", "inhib_weight", "throughput_mean", "throughput_std"}
_BOOL_KEYS = {"clamp_negative", "early_stop"}


class ConfigError(ValueError):
    pass


def _parse_bool(text):
    low = text.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def parse_config_text(text, source="<config>"):
    """Parse ``key = value`` lines into a dict of typed values.

    ``#`` starts a comment.  Errors name the source and line number.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SOLVER_KEYS + FILE_KEYS + EXTRA_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"{source}:{lineno}: empty value for {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in _BOOL_KEYS:
                values[key] = _parse_bool(value)
            else:
                values[key] = value
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {exc}") from None
    return values


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text, source=str(path))


def solver_config(values, **overrides):
    kwargs = {k: values[k] for k in SOLVER_KEYS + ("early_stop", "n_jobs") if k in values}
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return SolverConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid solver config: {exc}") from None


def config_snapshot(cfg):
    return asdict(cfg)


def read_matrix_csv(path):
    path = Path(path)
    rows = []
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric entry") from None
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError(f"{path}: rows must be non-empty and of equal length")
    return np.array(rows)


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def matrix_csv_text(matrix):
    m = np.asarray(matrix)
    return "".join(",".join(_fmt(v) for v in row) + "\n" for row in m.tolist())


def write_text(path, text):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def write_matrix_csv(path, matrix):
    write_text(path, matrix_csv_text(matrix))


def energy_trace_csv_text(result):
    lines = ["sweep,energy,flips"]
    for i, (e, f) in enumerate(zip(result.energy_trace, result.flips_per_sweep)):
        lines.append(f"{i},{_fmt(e)},{f}")
    return "\n".join(lines) + "\n"


def read_energy_trace_csv(path):
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "sweep,energy,flips":
            raise ValueError(f"{path}: unexpected header {header!r}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    return [(int(s), float(e), int(f)) for s, e, f in rows]


def grid_csv_text(grid):
    g = np.asarray(grid, dtype=int)
    header = "node," + ",".join(f"hop_{h}" for h in range(g.shape[1]))
    body = [f"{n}," + ",".join(str(v) for v in row) for n, row in enumerate(g.tolist())]
    return "\n".join([header] + body) + "\n"


def read_grid_csv(path):
    with open(path) as fh:
        fh.readline()
        rows = [line.strip().split(",")[1:] for line in fh if line.strip()]
    return np.array([[int(v) for v in r] for r in rows], dtype=bool)


def json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def sha256_file(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def load_topology_file(path):
    """Load a JSON topology: ``{"nodes": [[x, y], ...]}`` or constellation keys."""
    path = Path(path)
    data = json.loads(path.read_text())
    if "nodes" in data:
        return PlanarTopology(np.array(data["nodes"], dtype=float))
    try:
        return build_constellation(
            int(data["planes"]), int(data["sats_per_plane"]), bool(data.get("seam", True)),
            float(data.get("intra_cost", 1.0)), float(data.get("inter_cost", 1.0)),
        )
    except KeyError as exc:
        raise ValueError(f"{path}: topology file missing key {exc}") from None


def bundled_path(name):
    return resources.files("hoproute").joinpath("data", name)


def paper_throughput():
    """The throughput table printed with the original six-node run."""
    with resources.as_file(bundled_path("paper_throughput.csv")) as p:
        return read_matrix_csv(p)


def energy_svg(trace, width=640, height=400):
    """Static line chart of a per-sweep energy trace."""
    trace = np.asarray(trace, dtype=float)
    left, right, top, bottom = 70, 20, 20, 50
    pw, ph = width - left - right, height - top - bottom
    lo, hi = float(trace.min()), float(trace.max())
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    n = len(trace)

    def xy(i, e):
        x = left + (pw * i / (n - 1) if n > 1 else pw / 2)
        y = top + ph * (hi - e) / (hi - lo)
        return f"{x:.2f},{y:.2f}"

    pts = " ".join(xy(i, e) for i, e in enumerate(trace))
    marks = "".join(
        f'<circle cx="{xy(i, e).split(",")[0]}" cy="{xy(i, e).split(",")[1]}" r="2.5"/>'
        for i, e in enumerate(trace)
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>\n'
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>\n'
        f'<text x="{left + pw / 2:.0f}" y="{height - 10}" text-anchor="middle">Iteration</text>\n'
        f'<text x="15" y="{top + ph / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 15 {top + ph / 2:.0f})">Energy level</text>\n'
        f'<text x="{left - 5}" y="{top + 4}" text-anchor="end" font-size="10">{hi:.4g}</text>\n'
        f'<text x="{left - 5}" y="{top + ph + 4}" text-anchor="end" font-size="10">{lo:.4g}</text>\n'
        f'<polyline points="{pts}" fill="none" stroke="blue" stroke-dasharray="2,2"/>\n'
        f"<g fill=\"black\">{marks}</g>\n"
        "</svg>\n"
    )
