"""Desk-scale benchmark problems on the probability simplex.

Batch problems ignore the round index passed to ``loss``/``grad``; online
problems (``n_rounds`` set) expose one loss per round.  Each factory checks
its analytic gradient against central finite differences before returning.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .exceptions import DomainError, InvalidParams

DEFAULT_FLOOR = 1e-12


@dataclass(frozen=True)
class Problem:
    name: str
    dim: int
    loss: Callable[..., float]
    grad: Callable[..., np.ndarray]
    known_minimizer: Optional[np.ndarray] = None
    n_rounds: Optional[int] = None

    @property
    def sequential(self) -> bool:
        return self.n_rounds is not None


def finite_diff_grad(loss, u, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of ``loss`` at ``u``."""
    u = np.asarray(u, dtype=float)
    g = np.empty_like(u)
    for i in range(u.size):
        e = np.zeros_like(u)
        e[i] = h
        g[i] = (loss(u + e) - loss(u - e)) / (2 * h)
    return g


def check_gradient(problem: Problem, n_points: int = 50, rtol: float = 1e-5, seed: int = 0) -> float:
    """Compare analytic and finite-difference gradients at random interior points.

    Returns the worst relative discrepancy; raises :class:`InvalidParams`
    when it exceeds ``rtol``.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(n_points):
        u = rng.dirichlet(np.full(problem.dim, 2.0))
        u = np.maximum(u, 1e-3)
        u /= u.sum()
        t = int(rng.integers(problem.n_rounds)) if problem.sequential else 0
        g = problem.grad(u, t)
        fd = finite_diff_grad(lambda z: problem.loss(z, t), u)
        err = np.max(np.abs(fd - g)) / (np.max(np.abs(g)) + 1e-8)
        worst = max(worst, err)
    if worst > rtol:
        raise InvalidParams(
            f"{problem.name}: analytic gradient disagrees with finite differences (rel {worst:.3g})"
        )
    return worst


def _register(problem: Problem) -> Problem:
    check_gradient(problem, n_points=5)
    return problem


def _interior(w, what, floor=DEFAULT_FLOOR):
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size < 1:
        raise InvalidParams(f"{what} must be a non-empty vector")
    if not np.all(w >= 10 * floor) or abs(w.sum() - 1.0) > 1e-9:
        raise InvalidParams(f"{what} must be an interior point of the simplex")
    return w / w.sum()


def quadratic_problem(w_star) -> Problem:
    """``L(u) = 0.5 * ||u - w_star||**2``."""
    w_star = _interior(w_star, "w_star")
    w_star.setflags(write=False)

    def loss(u, t=0):
        d = np.asarray(u) - w_star
        return 0.5 * float(d @ d)

    def grad(u, t=0):
        return np.asarray(u, dtype=float) - w_star

    return _register(Problem("quadratic", w_star.size, loss, grad, w_star))


def cross_entropy_problem(p_target) -> Problem:
    """``L(u) = -sum_i p_i ln u_i``, minimized over the simplex at ``u = p``."""
    p = _interior(p_target, "p_target")
    p.setflags(write=False)

    def loss(u, t=0):
        u = np.asarray(u, dtype=float)
        if not np.all(u > 0):
            raise DomainError("cross-entropy is undefined on the simplex boundary")
        return float(-(p @ np.log(u)))

    def grad(u, t=0):
        u = np.asarray(u, dtype=float)
        if not np.all(u > 0):
            raise DomainError("cross-entropy is undefined on the simplex boundary")
        return -p / u

    return _register(Problem("cross_entropy", p.size, loss, grad, p))


def portfolio_problem(returns) -> Problem:
    """Online log-loss ``-ln(r_t . u)`` over a ``(T, N)`` matrix of gross returns."""
    R = np.asarray(returns, dtype=float)
    if R.ndim != 2 or R.shape[0] < 1:
        raise InvalidParams("returns must be a non-empty (T, N) matrix")
    if not np.all(R > 0):
        raise InvalidParams("gross returns must be strictly positive")
    R = R.copy()
    R.setflags(write=False)

    def loss(u, t=0):
        g = float(R[t] @ u)
        if not g > 0:
            raise DomainError("portfolio growth r.u must be positive")
        return -np.log(g)

    def grad(u, t=0):
        g = float(R[t] @ u)
        if not g > 0:
            raise DomainError("portfolio growth r.u must be positive")
        return -R[t] / g

    return _register(Problem("portfolio", R.shape[1], loss, grad, None, n_rounds=R.shape[0]))


def least_squares_problem(X, y) -> Problem:
    """``L(u) = ||X u - y||**2 / (2 n)``: simplex-constrained regression."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = X.shape[0]

    def loss(u, t=0):
        r = X @ u - y
        return 0.5 * float(r @ r) / n

    def grad(u, t=0):
        return X.T @ (X @ u - y) / n

    return _register(Problem("least_squares", X.shape[1], loss, grad))


def load_returns_csv(path) -> tuple[list[str], np.ndarray]:
    """Read a returns file: header of asset names, one row of gross returns per round."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 2:
        raise InvalidParams(f"{path}: need a header row and at least one round")
    names = [c.strip() for c in rows[0]]
    try:
        R = np.array([[float(c) for c in row] for row in rows[1:] if row], dtype=float)
    except ValueError as exc:
        raise InvalidParams(f"{path}: {exc}") from exc
    if R.shape[1] != len(names):
        raise InvalidParams(f"{path}: {R.shape[1]} columns but {len(names)} asset names")
    return names, R


def write_returns_csv(path, names, returns) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for row in np.asarray(returns, dtype=float):
            w.writerow([repr(float(v)) for v in row])


def synthetic_returns(n_rounds: int = 250, seed: int = 0, drift=(1.002, 1.0), vol=(0.02, 0.001)) -> np.ndarray:
    """Two-asset gross returns: a drifting risky asset and a near-cash asset."""
    rng = np.random.default_rng(seed)
    drift = np.asarray(drift, dtype=float)
    vol = np.asarray(vol, dtype=float)
    return drift * np.exp(rng.normal(0.0, vol, size=(n_rounds, drift.size)) - 0.5 * vol**2)


def _random_interior(dim, rng, min_weight=0.02):
    w = rng.dirichlet(np.full(dim, 5.0))
    w = np.maximum(w, min_weight)
    return w / w.sum()


def make_problem(name: str, params: dict | None = None, rng=None, base_dir: Path | None = None) -> Problem:
    """Build a registered problem from a config entry.

    ``quadratic`` takes ``w_star`` or ``dim`` (random target from ``rng``);
    ``cross_entropy`` takes ``p_target`` or ``dim``; ``portfolio`` takes
    ``csv`` (path, relative to ``base_dir``), ``returns`` (matrix) or
    ``synthetic: {n_rounds, seed}``.
    """
    params = dict(params or {})
    rng = rng if rng is not None else np.random.default_rng(0)
    if name in ("quadratic", "cross_entropy"):
        key = "w_star" if name == "quadratic" else "p_target"
        target = params.get(key)
        if target is None:
            if "dim" not in params:
                raise InvalidParams(f"{name} needs {key!r} or 'dim'")
            target = _random_interior(int(params["dim"]), rng)
        factory = quadratic_problem if name == "quadratic" else cross_entropy_problem
        return factory(target)
    if name == "portfolio":
        if "csv" in params:
            path = Path(params["csv"])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            return portfolio_problem(load_returns_csv(path)[1])
        if "returns" in params:
            return portfolio_problem(params["returns"])
        syn = params.get("synthetic", {})
        return portfolio_problem(synthetic_returns(**syn))
    raise InvalidParams(f"unknown problem {name!r}; expected quadratic, cross_entropy or portfolio")
