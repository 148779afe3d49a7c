import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_passage.core_model import PulseParams
from twisted_passage.dynamics import IntegratorConfig, integrate
from twisted_passage.io import (
    ConfigError,
    dumps,
    fmt,
    format_sweep,
    load_config,
    read_sweep,
    read_trajectory,
    write_sweep,
    write_trajectory,
)
from twisted_passage.plotting import plot_trace
from twisted_passage.sweeps import SweepResult, SweepRow


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trips(x):
    assert float(fmt(x)) == x


def test_fmt_none():
    assert fmt(None) == ""


@pytest.mark.parametrize("kind", ["csv", "json"])
def test_trajectory_bits_survive(tmp_path, kind):
    traj = integrate(PulseParams(5.0, 0.05, 3), IntegratorConfig(tau0=80.0, n_samples=21))
    path = tmp_path / f"t.{kind}"
    write_trajectory(path, traj, kind)
    table = read_trajectory(path)
    assert np.array_equal(table.tau, traj.tau)
    assert np.array_equal(table.S, traj.S) and np.array_equal(table.I, traj.I)
    assert np.array_equal(table.P, traj.P)


def test_not_a_trajectory(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError, match="not a trajectory"):
        read_trajectory(path)


def _result():
    rows = (SweepRow(0.02, 0.997, (0.0, 50.0)), SweepRow(0.05, None, (0.0, 20.0), "step size fell below 1e-12"))
    return SweepResult(rows, {"lam": 5.0, "n": 3})


def test_sweep_csv_round_trip(tmp_path):
    path = tmp_path / "s.csv"
    write_sweep(path, _result())
    good, bad = read_sweep(path)
    assert good == {"eta": 0.02, "P": 0.997, "fidelity": 1 - 0.997, "n_crossings": 2,
                    "crossing_locations": (0.0, 50.0), "meets_ft": False, "error": None}
    assert bad["P"] is None and bad["meets_ft"] is None and bad["error"].startswith("step size")


def test_sweep_json_is_sorted_and_stable():
    text = format_sweep(_result(), fmt_kind="json")
    assert text == format_sweep(_result(), fmt_kind="json")
    doc = json.loads(text)
    assert list(doc) == ["metadata", "rows"]
    assert doc["rows"][1]["P"] is None


def test_dumps_handles_numpy():
    assert json.loads(dumps({"x": np.float64(0.5), "k": np.int64(3), "b": np.bool_(True)})) == {
        "b": True, "k": 3, "x": 0.5}


def test_config_errors(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("[1, 2]")
    with pytest.raises(ConfigError, match=":1:1:"):
        load_config(path)
    path.write_text('{"a": 1,}')
    with pytest.raises(ConfigError, match=r"c\.json:1:9:"):
        load_config(path)


def test_plot_rejects_empty(tmp_path):
    with pytest.raises(ValueError, match="empty"):
        plot_trace([], [], tmp_path / "x.svg")


def test_plot_marks_crossings(tmp_path):
    tau = np.linspace(-40, 40, 81)
    plot_trace(tau, 0.5 * (1 + np.tanh(tau)), tmp_path / "a.svg", crossings=(0.0, 20.0))
    plot_trace(tau, 0.5 * (1 + np.tanh(tau)), tmp_path / "b.svg", crossings=(0.0, 20.0))
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()
