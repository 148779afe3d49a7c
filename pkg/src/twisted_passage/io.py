"""Reading and writing trajectories, sweep tables, summaries and config files.

Floats are written with 17 significant digits so every double survives a
write/read cycle bit for bit.  Output never depends on wall-clock time.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analytic import quadratic_exact
from .dynamics import Trajectory
from .sweeps import SweepResult

__all__ = [
    "ConfigError",
    "TRAJECTORY_COLUMNS",
    "SWEEP_COLUMNS",
    "TraceTable",
    "fmt",
    "write_trajectory",
    "read_trajectory",
    "write_sweep",
    "format_sweep",
    "read_sweep",
    "write_json",
    "dumps",
    "load_config",
]

TRAJECTORY_COLUMNS = ("tau", "re_S", "im_S", "re_I", "im_I", "P")
SWEEP_COLUMNS = ("eta", "P", "fidelity", "n_crossings", "crossing_locations", "meets_ft", "error")


class ConfigError(ValueError):
    """A config file could not be read or holds unusable values."""


def fmt(x) -> str:
    """Shortest-safe text for a float: 17 significant digits, '' for None."""
    if x is None:
        return ""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class TraceTable:
    """Columns of a trajectory file."""

    tau: np.ndarray
    S: np.ndarray
    I: np.ndarray
    P: np.ndarray

    def __len__(self):
        return self.tau.size


def write_trajectory(path, traj: Trajectory, fmt_kind: str = "csv") -> None:
    path = Path(path)
    cols = (traj.tau, traj.S.real, traj.S.imag, traj.I.real, traj.I.imag, traj.P)
    if fmt_kind == "json":
        doc = {name: [float(v) for v in col] for name, col in zip(TRAJECTORY_COLUMNS, cols)}
        write_json(path, doc)
        return
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRAJECTORY_COLUMNS)
        for row in zip(*cols):
            writer.writerow([fmt(v) for v in row])


def read_trajectory(path) -> TraceTable:
    """Read a trajectory written by :func:`write_trajectory` (CSV or JSON)."""
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        cols = {name: np.asarray(doc[name], dtype=float) for name in TRAJECTORY_COLUMNS}
    else:
        rows = list(csv.reader(text.splitlines()))
        if not rows or tuple(rows[0]) != TRAJECTORY_COLUMNS:
            raise ValueError(f"{path}: not a trajectory file (header must be {','.join(TRAJECTORY_COLUMNS)})")
        data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float).reshape(-1, 6)
        cols = dict(zip(TRAJECTORY_COLUMNS, data.T))
    return TraceTable(
        tau=cols["tau"],
        S=cols["re_S"] + 1j * cols["im_S"],
        I=cols["re_I"] + 1j * cols["im_I"],
        P=cols["P"],
    )


def write_sweep(path, result: SweepResult, oracle: str | None = None, fmt_kind: str = "csv") -> None:
    Path(path).write_text(format_sweep(result, oracle, fmt_kind))


def format_sweep(result: SweepResult, oracle: str | None = None, fmt_kind: str = "csv") -> str:
    """Sweep table as text, one line per row.

    ``oracle='quadratic'`` appends the exact quadratic-twist probability as a
    ``P_quadratic_exact`` column (meaningful for n = 2 only).
    """
    columns = list(SWEEP_COLUMNS)
    if oracle == "quadratic":
        columns.append("P_quadratic_exact")
    records = []
    for row in result.rows:
        rec = {
            "eta": row.eta,
            "P": row.P,
            "fidelity": row.fidelity,
            "n_crossings": len(row.crossings),
            "crossing_locations": list(row.crossings),
            "meets_ft": row.meets_ft,
            "error": row.error,
        }
        if oracle == "quadratic":
            rec["P_quadratic_exact"] = quadratic_exact(result.metadata["lam"], row.eta)
        records.append(rec)
    if fmt_kind == "json":
        return dumps({"metadata": result.metadata, "rows": records})
    fh = io.StringIO()
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        out = []
        for name in columns:
            v = rec[name]
            if name == "crossing_locations":
                out.append(";".join(fmt(x) for x in v))
            elif name == "meets_ft":
                out.append("" if v is None else str(v).lower())
            elif name == "n_crossings":
                out.append(str(v))
            elif name == "error":
                out.append(v or "")
            else:
                out.append(fmt(v))
        writer.writerow(out)
    return fh.getvalue()


def read_sweep(path) -> list[dict]:
    """Parse a CSV sweep table back into dicts of typed values."""
    out = []
    with Path(path).open(newline="") as fh:
        for rec in csv.DictReader(fh):
            parsed = {}
            for key, v in rec.items():
                if key == "crossing_locations":
                    parsed[key] = tuple(float(x) for x in v.split(";")) if v else ()
                elif key == "n_crossings":
                    parsed[key] = int(v)
                elif key == "meets_ft":
                    parsed[key] = None if v == "" else v == "true"
                elif key == "error":
                    parsed[key] = v or None
                else:
                    parsed[key] = None if v == "" else float(v)
            out.append(parsed)
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def write_json(path, doc) -> None:
    Path(path).write_text(dumps(doc))


def dumps(doc) -> str:
    """Deterministic JSON text (sorted keys, repr floats, trailing newline)."""
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True, allow_nan=False) + "\n"


def load_config(path) -> dict:
    """Load a JSON config object; syntax errors report line and column."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}:1:1: config must be a JSON object")
    return doc
