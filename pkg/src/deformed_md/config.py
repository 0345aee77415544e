"""Experiment configuration files (JSON, ``schema_version`` 1).

Example::

    {
      "schema_version": 1,
      "problem": {"name": "quadratic", "params": {"w_star": [0.3, 0.7]}},
      "family": {"tag": "tsallis", "params": {"q": 0.7}},
      "variant": "md",
      "eta": 0.5,
      "schedule": "constant",
      "max_iters": 5000,
      "grad_tol": 1e-8,
      "seed": 0,
      "init": "uniform",
      "sweep": {"family.q": [0.5, 1.0, 1.5], "eta": [0.25, 0.5]},
      "output": "out"
    }

Sweep keys are dotted paths: ``eta``, ``variant``, ``schedule``,
``max_iters``, ``grad_tol``, ``normalize_loss``, ``family.tag``,
``family.<param>``, ``problem.name`` and ``problem.<param>``.
"""

from __future__ import annotations

import copy
import itertools
import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

import numpy as np

from .descent import SCHEDULES, VARIANTS, DescentConfig
from .exceptions import InvalidParams
from .linkfn import LinkFamily, make_family
from .problems import Problem, make_problem

SCHEMA_VERSION = 1
INITS = ("uniform", "random")
_TOP_LEVEL_SWEEP = ("eta", "variant", "schedule", "max_iters", "grad_tol", "normalize_loss")


@dataclass
class ExperimentConfig:
    problem: dict = field(default_factory=lambda: {"name": "quadratic", "params": {"dim": 2}})
    family: dict = field(default_factory=lambda: {"tag": "natural", "params": {}})
    variant: str = "md"
    eta: float = 0.5
    schedule: str = "constant"
    max_iters: int = 5000
    grad_tol: float = 1e-8
    floor: float = 1e-12
    normalize_loss: bool = True
    seed: int = 0
    init: str = "uniform"
    sweep: Optional[dict] = None
    max_combinations: int = 10_000
    output: str = "out"
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = copy.deepcopy(data)
        version = data.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise InvalidParams(f"unsupported schema_version {version} (expected {SCHEMA_VERSION})")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParams(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.family.setdefault("params", {})
        cfg.problem.setdefault("params", {})
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)

    def with_overrides(self, overrides: dict) -> "ExperimentConfig":
        data = self.to_dict()
        data["sweep"] = None
        for key, value in overrides.items():
            head, _, rest = key.partition(".")
            if not rest:
                if key not in _TOP_LEVEL_SWEEP:
                    raise InvalidParams(f"cannot sweep over {key!r}")
                data[key] = value
            elif (head, rest) in (("family", "tag"), ("problem", "name")):
                data[head][rest] = value
            elif head in ("family", "problem"):
                data[head]["params"][rest] = value
            else:
                raise InvalidParams(f"cannot sweep over {key!r}")
        return ExperimentConfig.from_dict(data)


def loads(text: str) -> ExperimentConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParams(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidParams("config must be a JSON object")
    return ExperimentConfig.from_dict(data)


def dumps(cfg: ExperimentConfig) -> str:
    return json.dumps(cfg.to_dict(), indent=2, sort_keys=True)


def load_config(path) -> ExperimentConfig:
    return loads(Path(path).read_text())


def build_family(cfg: ExperimentConfig) -> LinkFamily:
    fam = cfg.family
    if "tag" not in fam:
        raise InvalidParams("family entry needs a 'tag'")
    family = make_family(fam["tag"], **dict(fam.get("params", {})))
    if family.violations:
        raise InvalidParams([f"family {fam['tag']}: {v}" for v in family.violations])
    return family


def build_run(cfg: ExperimentConfig, base_dir: Path | None = None):
    """Resolve a config into ``(DescentConfig, Problem, w0)``.

    The seed drives, in order, any random problem target and the random
    initial point.  Raises :class:`InvalidParams` on any validation failure.
    """
    problems = []
    if cfg.variant not in VARIANTS:
        problems.append(f"variant must be one of {VARIANTS}")
    if cfg.schedule not in SCHEDULES:
        problems.append(f"schedule must be one of {SCHEDULES}")
    if cfg.init not in INITS:
        problems.append(f"init must be one of {INITS}")
    if problems:
        raise InvalidParams(problems)
    family = build_family(cfg)
    rng = np.random.default_rng(cfg.seed)
    if "name" not in cfg.problem:
        raise InvalidParams("problem entry needs a 'name'")
    problem: Problem = make_problem(cfg.problem["name"], cfg.problem.get("params"), rng, base_dir)
    dcfg = DescentConfig(
        variant=cfg.variant,
        family=family,
        eta=float(cfg.eta),
        schedule=cfg.schedule,
        max_iters=int(cfg.max_iters),
        grad_tol=float(cfg.grad_tol),
        floor=float(cfg.floor),
        normalize_loss=bool(cfg.normalize_loss),
    )
    if cfg.init == "uniform":
        w0 = np.full(problem.dim, 1.0 / problem.dim)
    else:
        w0 = rng.dirichlet(np.ones(problem.dim))
        w0 = np.maximum(w0, 1e-3)
        w0 /= w0.sum()
    return dcfg, problem, w0


def sweep_points(cfg: ExperimentConfig) -> list[dict]:
    """Cartesian product of the sweep grids, keys in sorted order."""
    grids = cfg.sweep or {}
    for key, values in grids.items():
        if not isinstance(values, list) or not values:
            raise InvalidParams(f"sweep grid {key!r} must be a non-empty list")
    keys = sorted(grids)
    total = int(np.prod([len(grids[k]) for k in keys])) if keys else 1
    if total > cfg.max_combinations:
        raise InvalidParams(
            f"sweep has {total} combinations, above the cap of {cfg.max_combinations}"
        )
    return [dict(zip(keys, combo)) for combo in itertools.product(*(grids[k] for k in keys))]
