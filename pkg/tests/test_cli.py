import csv
import json

import pytest

from deformed_md import cli
from deformed_md.config import ExperimentConfig, build_run, dumps, load_config, loads, sweep_points
from deformed_md.exceptions import InvalidParams


def _write(path, **over):
    data = {
        "problem": {"name": "quadratic", "params": {"w_star": [0.2, 0.3, 0.5]}},
        "family": {"tag": "natural", "params": {}},
        "eta": 0.5,
        "max_iters": 5000,
        "grad_tol": 1e-9,
        "seed": 3,
    }
    data.update(over)
    path.write_text(json.dumps(data))
    return path


def test_run_quadratic_natural(tmp_path, capsys):
    cfg = _write(tmp_path / "c.json")
    assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
    summary = json.loads((tmp_path / "o" / "run.summary.json").read_text())
    assert summary["converged"] is True
    assert summary["max_abs_error"] <= 1e-4
    assert {"final_loss", "iterations", "wall_time"} <= set(summary)
    printed = json.loads(capsys.readouterr().out)
    assert printed["converged"] is True


def test_trace_csv_columns(tmp_path):
    cfg = _write(tmp_path / "c.json", max_iters=3, grad_tol=0.0)
    cli.main(["run", "--config", str(cfg), "--out", str(tmp_path)])
    rows = list(csv.reader((tmp_path / "run.trace.csv").open()))
    assert rows[0] == ["t", "loss", "grad_norm", "w_1", "w_2", "w_3"]
    assert len(rows) == 1 + 4
    assert float(rows[1][3]) == 1 / 3


def test_invalid_family_exit_2(tmp_path, capsys):
    cfg = _write(tmp_path / "c.json", family={"tag": "tsallis", "params": {"q": -1}})
    assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "q must be > 0" in err


@pytest.mark.parametrize(
    "over",
    [
        {"variant": "sgd"},
        {"problem": {"name": "nope", "params": {}}},
        {"family": {"tag": "kaniadakis", "params": {"kappa": 4}}},
        {"schema_version": 2},
        {"colour": "blue"},
        {"sweep": {"eta": list(range(200)), "family.q": list(range(1, 100))}},
    ],
)
def test_config_errors_exit_2(tmp_path, over):
    cfg = _write(tmp_path / "c.json", **over)
    assert cli.main(["validate", "--config", str(cfg)]) == 2


def test_unreadable_config_exit_2(tmp_path):
    assert cli.main(["validate", "--config", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["validate", "--config", str(bad)]) == 2


def test_runtime_failure_exit_3(tmp_path):
    # cross-entropy with a huge constant step keeps failing until the halvings run out
    cfg = _write(
        tmp_path / "c.json",
        problem={"name": "cross_entropy", "params": {"p_target": [0.01, 0.99]}},
        family={"tag": "htg", "params": {"a": 0.9, "b": 0.0}},
        eta=1e6,
    )
    assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 3
    summary = json.loads((tmp_path / "o" / "run.summary.json").read_text())
    assert summary["converged"] is False and summary["error"].startswith("StepFailure")
    assert (tmp_path / "o" / "run.trace.csv").read_text().count("\n") >= 2


def test_validate_and_families(tmp_path, capsys):
    cfg = _write(tmp_path / "c.json")
    assert cli.main(["validate", "--config", str(cfg)]) == 0
    assert cli.main(["families"]) == 0
    out = capsys.readouterr().out
    assert "tsallis" in out and "tempesta" in out


def test_run_is_byte_identical(tmp_path):
    cfg = _write(
        tmp_path / "c.json",
        problem={"name": "cross_entropy", "params": {"dim": 6}},
        family={"tag": "tempesta", "params": {"phi": {"kind": "reciprocal"}, "alpha": 0.5, "sigma": 0.4}},
        init="random",
        max_iters=200,
    )
    for d in ("a", "b"):
        assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / d), "--seed", "17"]) == 0
    a = (tmp_path / "a" / "run.trace.csv").read_bytes()
    b = (tmp_path / "b" / "run.trace.csv").read_bytes()
    assert a == b
    cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "c"), "--seed", "18"])
    assert (tmp_path / "c" / "run.trace.csv").read_bytes() != a


def test_out_dir_from_environment(tmp_path, monkeypatch):
    cfg = _write(tmp_path / "c.json", output=str(tmp_path / "from_config"))
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "from_env"))
    assert cli.main(["run", "--config", str(cfg)]) == 0
    assert (tmp_path / "from_env" / "run.trace.csv").exists()
    monkeypatch.delenv(cli.OUT_ENV)
    assert cli.main(["run", "--config", str(cfg)]) == 0
    assert (tmp_path / "from_config" / "run.trace.csv").exists()


def test_sweep_rows_and_ranking(tmp_path):
    cfg = _write(
        tmp_path / "c.json",
        problem={"name": "cross_entropy", "params": {"p_target": [0.3, 0.7]}},
        family={"tag": "tsallis", "params": {"q": 0.7}},
        max_iters=40,
        sweep={"family.q": [0.5, 1.0, 1.5], "eta": [0.1, 0.2]},
    )
    assert cli.main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
    rows = list(csv.DictReader((tmp_path / "o" / "summary.csv").open()))
    assert len(rows) == 6
    assert [int(r["rank"]) for r in rows] == list(range(1, 7))
    losses = [float(r["final_loss"]) for r in rows]
    assert losses == sorted(losses)
    assert len(list((tmp_path / "o").glob("point_*.trace.csv"))) == 6


def test_sweep_reports_failed_points(tmp_path):
    cfg = _write(tmp_path / "c.json", family={"tag": "tsallis", "params": {}}, sweep={"family.q": [-1.0, 0.5]}, max_iters=20)
    assert cli.main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
    rows = list(csv.DictReader((tmp_path / "o" / "summary.csv").open()))
    assert len(rows) == 2
    assert rows[-1]["family.q"] == "-1.0"
    assert rows[-1]["converged"] == "False" and rows[-1]["error"].startswith("InvalidParams")


def test_sweep_ranking_is_deterministic(tmp_path):
    cfg = _write(tmp_path / "c.json", family={"tag": "tsallis", "params": {}}, max_iters=30,
                 sweep={"family.q": [0.5, 0.75, 1.0, 1.25, 1.5]})
    orders = []
    for d in ("a", "b"):
        cli.main(["sweep", "--config", str(cfg), "--out", str(tmp_path / d)])
        orders.append([r["name"] for r in csv.DictReader((tmp_path / d / "summary.csv").open())])
    assert orders[0] == orders[1]


def test_parallel_sweep_matches_serial(tmp_path):
    cfg = _write(tmp_path / "c.json", max_iters=30, sweep={"eta": [0.1, 0.2, 0.4]})
    cli.main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "s")])
    cli.main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "p"), "--jobs", "2"])
    for f in (tmp_path / "s").glob("point_*.trace.csv"):
        assert f.read_bytes() == (tmp_path / "p" / f.name).read_bytes()


def test_single_point_sweep_matches_run(tmp_path):
    cfg = _write(tmp_path / "c.json", max_iters=30, sweep={"eta": [0.5]})
    cli.main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "s")])
    cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "r")])
    assert (tmp_path / "s" / "point_0000.trace.csv").read_bytes() == (tmp_path / "r" / "run.trace.csv").read_bytes()


# ---- configuration -------------------------------------------------------------------

def test_config_round_trip(tmp_path):
    cfg = ExperimentConfig(
        problem={"name": "portfolio", "params": {"synthetic": {"n_rounds": 20, "seed": 4}}},
        family={"tag": "tempesta", "params": {"phi": {"kind": "linear", "a": 1.0, "c": 0.5}, "alpha": 0.2, "sigma": 0.3}},
        sweep={"eta": [0.1, 0.2]},
        seed=42,
    )
    assert loads(dumps(cfg)) == cfg
    path = tmp_path / "cfg.json"
    path.write_text(dumps(cfg))
    assert load_config(path) == cfg


def test_with_overrides():
    cfg = ExperimentConfig(family={"tag": "tsallis", "params": {"q": 0.7}})
    point = cfg.with_overrides({"family.q": 1.3, "eta": 0.2, "problem.name": "cross_entropy"})
    assert point.family["params"]["q"] == 1.3 and point.eta == 0.2
    assert point.problem["name"] == "cross_entropy"
    with pytest.raises(InvalidParams):
        cfg.with_overrides({"seed": 3})
    with pytest.raises(InvalidParams):
        cfg.with_overrides({"output.dir": "x"})


def test_sweep_points_cartesian_sorted():
    cfg = ExperimentConfig(sweep={"eta": [0.1, 0.2], "family.q": [0.5, 1.0, 1.5]})
    pts = sweep_points(cfg)
    assert len(pts) == 6
    assert pts[0] == {"eta": 0.1, "family.q": 0.5}
    with pytest.raises(InvalidParams):
        sweep_points(ExperimentConfig(sweep={"eta": []}))
    with pytest.raises(InvalidParams):
        sweep_points(ExperimentConfig(sweep={"eta": [1, 2, 3]}, max_combinations=2))


def test_seed_determines_random_start():
    cfg = ExperimentConfig(problem={"name": "quadratic", "params": {"dim": 5}}, init="random", seed=8)
    _, p1, w1 = build_run(cfg)
    _, p2, w2 = build_run(cfg)
    assert (w1 == w2).all() and (p1.known_minimizer == p2.known_minimizer).all()
    _, _, w3 = build_run(ExperimentConfig(**{**cfg.to_dict(), "seed": 9}))
    assert not (w1 == w3).all()


def test_bundled_configs_validate():
    from pathlib import Path

    for path in sorted((Path(__file__).parent.parent / "configs").glob("*.json")):
        assert cli.main(["validate", "--config", str(path)]) == 0, path
