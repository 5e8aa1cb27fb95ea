"""End-to-end consumption of the upstream estimator's file artifacts."""

import shutil
import subprocess

import pytest

from nnvalidate import (load_points_csv, load_width_interval, make_dataset,
                        save_summary_json, save_sweep_csv, train_sweep)


@pytest.fixture(scope="module")
def circle_artifacts(tmp_path_factory):
    """A quick upstream run on a circle: points.csv plus estimate.json."""
    if shutil.which("homodim") is None:
        pytest.skip("upstream estimator CLI not on PATH")
    outdir = tmp_path_factory.mktemp("upstream") / "circle"
    subprocess.run(
        ["homodim", "pipeline", "--kind", "circle", "--q", "1", "--n", "80",
         "--noise", "0.01", "--seed", "1", "--max-dim", "2", "--max-edge",
         "2.0", "--min-height", "0.29", "--out", str(outdir)],
        check=True, capture_output=True)
    return outdir


def test_reads_upstream_estimate(circle_artifacts):
    # a circle is one torus factor: dim 3, recommended width exactly 6
    assert load_width_interval(circle_artifacts / "estimate.json") == (6, 6)


def test_trains_on_upstream_points(circle_artifacts, tmp_path):
    pts = load_points_csv(circle_artifacts / "points.csv")
    assert pts.shape == (80, 2)
    ds = make_dataset(pts, sigma=0.1, seed=0)
    res = train_sweep(ds, widths=[2], epochs=3, lr=1e-3, seed=0)
    assert not res.failures
    assert len(res.trajectories[2]) == 3
    save_sweep_csv(res, tmp_path / "sweep.csv")
    save_summary_json(res, tmp_path / "summary.json")
    assert (tmp_path / "sweep.csv").exists()
    assert (tmp_path / "summary.json").exists()
