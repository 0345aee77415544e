"""Command-line front end.

    deformed-md run      --config exp.json [--out DIR] [--seed N]
    deformed-md sweep    --config exp.json [--out DIR] [--seed N] [--jobs N]
    deformed-md validate --config exp.json
    deformed-md families

Exit codes: 0 success, 2 configuration error, 3 runtime failure.  The
output directory is ``--out``, else ``$DEFORMED_MD_OUT``, else the
config's ``output`` entry.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import config as config_mod
from .config import ExperimentConfig, build_run, sweep_points
from .descent import Trace, run
from .exceptions import DeformedMDError, InvalidParams
from .linkfn import CATALOG, PARAM_RANGES, default_family

OUT_ENV = "DEFORMED_MD_OUT"
EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def trace_csv(trace) -> str:
    """Per-iteration CSV; reals are written with ``repr`` so they round-trip exactly."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    dim = trace.records[0].w.size if trace.records else 0
    writer.writerow(["t", "loss", "grad_norm"] + [f"w_{i + 1}" for i in range(dim)])
    for rec in trace.records:
        writer.writerow(
            [rec.t, repr(float(rec.loss)), repr(float(rec.grad_norm))]
            + [repr(float(v)) for v in rec.w]
        )
    return buf.getvalue()


def run_experiment(cfg: ExperimentConfig, out_dir, name: str = "run", base_dir=None) -> dict:
    """Run one configuration, write ``<name>.trace.csv`` and ``<name>.summary.json``.

    Configuration problems raise :class:`InvalidParams`.  Runtime failures
    are reported in the returned summary (``error`` set, ``converged``
    false) and the partial trace is still written.
    """
    out_dir = Path(out_dir)
    dcfg, problem, w0 = build_run(cfg, base_dir)
    start = time.perf_counter()
    error = None
    try:
        trace = run(dcfg, problem, w0)
    except DeformedMDError as exc:
        trace = getattr(exc, "trace", None)
        error = f"{type(exc).__name__}: {exc}"
        if trace is None:
            trace = Trace()
    wall = time.perf_counter() - start
    trace_file = f"{name}.trace.csv"
    _atomic_write(out_dir / trace_file, trace_csv(trace))
    last = trace.records[-1] if trace.records else None
    final_w = trace.w_final if trace.w_final is not None else (last.w if last else None)
    summary = {
        "name": name,
        "final_loss": float(last.loss) if last else float("nan"),
        "iterations": max(len(trace) - 1, 0) if not problem.sequential else len(trace),
        "converged": bool(trace.converged) and error is None,
        "error": error,
        "final_w": None if final_w is None else [float(v) for v in final_w],
        "log_wealth": trace.log_wealth,
        "wall_time": wall,
        "trace_file": trace_file,
        "config": cfg.to_dict(),
    }
    if problem.known_minimizer is not None and final_w is not None:
        summary["max_abs_error"] = float(np.max(np.abs(final_w - problem.known_minimizer)))
    _atomic_write(out_dir / f"{name}.summary.json", json.dumps(summary, indent=2, sort_keys=True))
    return summary


def _sweep_worker(cfg_dict, overrides, out_dir, name, base_dir):
    cfg = ExperimentConfig.from_dict(cfg_dict)
    try:
        point = cfg.with_overrides(overrides)
        summary = run_experiment(point, out_dir, name, base_dir)
    except InvalidParams as exc:
        summary = {
            "name": name,
            "final_loss": float("nan"),
            "iterations": 0,
            "converged": False,
            "error": f"InvalidParams: {exc}",
            "trace_file": "",
            "wall_time": 0.0,
        }
    summary["overrides"] = overrides
    return summary


def _rank_key(row):
    loss = row["final_loss"]
    failed = row["error"] is not None or not np.isfinite(loss)
    params = tuple((k, repr(v)) for k, v in sorted(row["overrides"].items()))
    return (failed, loss if not failed else 0.0, row["iterations"], params)


def sweep(cfg: ExperimentConfig, out_dir, jobs: int = 1, base_dir=None) -> list[dict]:
    """Run the Cartesian product of ``cfg.sweep`` and write a ranked ``summary.csv``."""
    out_dir = Path(out_dir)
    points = sweep_points(cfg)
    base = cfg.to_dict()
    names = [f"point_{i:04d}" for i in range(len(points))]
    args = [(base, p, str(out_dir), n, base_dir) for p, n in zip(points, names)]
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_worker, *zip(*args)))
    else:
        rows = [_sweep_worker(*a) for a in args]
    rows.sort(key=_rank_key)
    keys = sorted(cfg.sweep or {})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["rank", "name"] + keys
        + ["final_loss", "iterations", "converged", "error", "trace_file", "wall_time"]
    )
    for rank, row in enumerate(rows, start=1):
        writer.writerow(
            [rank, row["name"]]
            + [json.dumps(row["overrides"][k]) for k in keys]
            + [
                repr(float(row["final_loss"])),
                row["iterations"],
                row["converged"],
                row["error"] or "",
                row["trace_file"],
                repr(float(row["wall_time"])),
            ]
        )
    _atomic_write(out_dir / "summary.csv", buf.getvalue())
    return rows


def _load(args) -> tuple[ExperimentConfig, Path]:
    path = Path(args.config)
    try:
        cfg = config_mod.load_config(path)
    except OSError as exc:
        raise InvalidParams(f"cannot read config: {exc}") from exc
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    return cfg, path.parent


def _out_dir(args, cfg) -> Path:
    if getattr(args, "out", None):
        return Path(args.out)
    return Path(os.environ.get(OUT_ENV) or cfg.output)


def _cmd_run(args) -> int:
    cfg, base = _load(args)
    summary = run_experiment(cfg, _out_dir(args, cfg), "run", base)
    print(json.dumps({k: summary[k] for k in ("final_loss", "iterations", "converged", "error")}))
    return EXIT_RUNTIME if summary["error"] else EXIT_OK


def _cmd_sweep(args) -> int:
    cfg, base = _load(args)
    build_run(cfg.with_overrides({}), base)
    rows = sweep(cfg, _out_dir(args, cfg), jobs=args.jobs, base_dir=base)
    for rank, row in enumerate(rows, start=1):
        print(f"{rank:4d}  {row['name']}  loss={row['final_loss']!r}  iters={row['iterations']}  "
              f"{json.dumps(row['overrides'], sort_keys=True)}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    cfg, base = _load(args)
    build_run(cfg.with_overrides({}), base)
    sweep_points(cfg)
    print("config OK")
    return EXIT_OK


def _cmd_families(args) -> int:
    for tag in CATALOG:
        defaults = default_family(tag).params()
        print(f"{tag:15s} {PARAM_RANGES[tag]}")
        print(f"{'':15s} defaults: {json.dumps(defaults, sort_keys=True)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deformed-md",
        description="Mirror descent with deformed-logarithm link functions on the simplex.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, help_ in (
        ("run", _cmd_run, "run a single experiment"),
        ("sweep", _cmd_sweep, "run a hyperparameter grid"),
        ("validate", _cmd_validate, "check a config file without running it"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="path to a JSON experiment config")
        if name != "validate":
            p.add_argument("--out", help=f"output directory (overrides ${OUT_ENV} and the config)")
            p.add_argument("--seed", type=int, help="override the config seed")
        if name == "sweep":
            p.add_argument("--jobs", type=int, default=1, help="parallel runs")
        p.set_defaults(func=func)
    p = sub.add_parser("families", help="list the link-function catalog")
    p.set_defaults(func=_cmd_families)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidParams as exc:
        print("configuration error:", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
        return EXIT_CONFIG
    except DeformedMDError as exc:
        print(f"runtime failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
