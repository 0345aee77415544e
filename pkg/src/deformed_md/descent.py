"""Mirror descent and mirror-less mirror descent over the probability simplex.

Both updates keep iterates in the open simplex: after each step the weights
are clipped to a positive floor and rescaled to unit l1 norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exceptions import (
    BracketError,
    DegenerateState,
    DomainError,
    InvalidParams,
    NoConvergence,
    StepFailure,
)
from .inverse import DEFAULT_SETTINGS, InversionSettings, invert_with_stats
from .linkfn import LinkFamily, Natural, _checked
from .problems import Problem

VARIANTS = ("md", "mmd")
SCHEDULES = ("constant", "inv_sqrt")
MAX_HALVINGS = 5


@dataclass(frozen=True)
class DescentConfig:
    """Optimizer settings.

    ``schedule="inv_sqrt"`` uses ``eta / sqrt(t)`` at step ``t = 1, 2, ...``.
    ``closed_form=False`` forces the numeric inverse even where a closed-form
    exponential exists.
    """

    variant: str = "md"
    family: LinkFamily = field(default_factory=Natural)
    eta: float = 0.5
    schedule: str = "constant"
    max_iters: int = 5000
    grad_tol: float = 1e-8
    inversion: InversionSettings = DEFAULT_SETTINGS
    floor: float = 1e-12
    normalize_loss: bool = True
    closed_form: bool = True

    def __post_init__(self):
        problems = []
        if self.variant not in VARIANTS:
            problems.append(f"variant must be one of {VARIANTS} (got {self.variant!r})")
        if self.schedule not in SCHEDULES:
            problems.append(f"schedule must be one of {SCHEDULES} (got {self.schedule!r})")
        if not self.eta > 0:
            problems.append(f"eta must be > 0 (got {self.eta})")
        if self.max_iters < 1:
            problems.append("max_iters must be >= 1")
        if not self.floor > 0:
            problems.append("floor must be > 0")
        problems.extend(self.family.violations)
        if problems:
            raise InvalidParams(problems)

    def eta_at(self, t: int) -> float:
        return self.eta if self.schedule == "constant" else self.eta / np.sqrt(t)


@dataclass
class TraceRecord:
    t: int
    w: np.ndarray
    loss: float
    grad_norm: float
    step_accepted: bool = True
    inversion_iters: int = 0


@dataclass
class Trace:
    records: list = field(default_factory=list)
    converged: bool = False
    w_final: Optional[np.ndarray] = None
    log_wealth: Optional[float] = None

    def __len__(self):
        return len(self.records)

    @property
    def losses(self) -> np.ndarray:
        return np.array([r.loss for r in self.records])

    @property
    def weights(self) -> np.ndarray:
        return np.array([r.w for r in self.records])


def check_simplex(w, floor: float = 0.0) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise DomainError("a simplex point is a non-empty vector")
    if not np.all(w > 0) or np.any(w < floor):
        raise DomainError("simplex points must be strictly positive")
    if abs(w.sum() - 1.0) > 1e-9:
        raise DomainError(f"simplex points must sum to 1 (sum={w.sum()!r})")
    return w


def project(w, floor: float = 1e-12) -> np.ndarray:
    """Clip to ``floor`` and rescale so the result sums to one with every entry >= floor."""
    w = np.maximum(np.asarray(w, dtype=float), 0.0)
    if floor * w.size >= 1:
        raise InvalidParams(f"floor {floor} is too large for dimension {w.size}")
    clipped = np.zeros(w.shape, dtype=bool)
    while True:
        free_mass = w[~clipped].sum()
        if not free_mass > 0:
            raise DegenerateState("every coordinate was clipped to the floor")
        out = np.where(clipped, floor, w * ((1.0 - floor * clipped.sum()) / free_mass))
        low = ~clipped & (out < floor)
        if not low.any():
            return out
        clipped |= low


def normalized_grad(loss_grad, w) -> np.ndarray:
    """Gradient at ``w`` of ``L(w / sum(w))`` given ``loss_grad = grad L``."""
    w = np.asarray(w, dtype=float)
    s = w.sum()
    u = w / s
    g = np.asarray(loss_grad(u), dtype=float)
    return (g - (u @ g)) / s


def _g_multiply(family, x, y, settings, closed_form):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    moving = y != 0
    out = x.copy()
    if not moving.any():
        return out, 0
    z = family._log(x[moving]) + y[moving]
    if closed_form and family.has_closed_exp:
        out[moving] = family._exp(z)
        return out, 0
    vals, iters = invert_with_stats(family, z, settings, x0=x[moving])
    out[moving] = vals
    return out, iters


def g_multiply(family: LinkFamily, x, y, settings: InversionSettings = DEFAULT_SETTINGS, closed_form: bool = True):
    """Componentwise ``exp_G(log_G(x) + y)``."""
    _checked(family)
    x = np.asarray(x, dtype=float)
    if not np.all(x > 0):
        raise DomainError("g_multiply needs a strictly positive x")
    return _g_multiply(family, x, y, settings, closed_form)[0]


def _md_step(cfg, w, grad, eta_t):
    grad = np.asarray(grad, dtype=float)
    if not np.any(grad):
        return np.array(w, dtype=float), 0
    try:
        w_tilde, iters = _g_multiply(cfg.family, w, -eta_t * grad, cfg.inversion, cfg.closed_form)
    except (DomainError, BracketError, NoConvergence) as exc:
        raise StepFailure(str(exc)) from exc
    if not np.all(np.isfinite(w_tilde)):
        raise StepFailure("non-finite weights after the multiplicative update")
    return project(w_tilde, cfg.floor), iters


def _mmd_step(cfg, w, grad, eta_t):
    grad = np.asarray(grad, dtype=float)
    if not np.any(grad):
        return np.array(w, dtype=float), 0
    w = np.asarray(w, dtype=float)
    w_tilde = w - eta_t * grad / cfg.family._dlog(w)
    if not np.all(np.isfinite(w_tilde)):
        raise StepFailure("non-finite weights after the additive update")
    if not np.any(w_tilde > 0):
        raise DegenerateState("every coordinate was clipped by the positive part")
    return project(w_tilde, cfg.floor), 0


def md_step(cfg: DescentConfig, w_t, grad, eta_t: float) -> np.ndarray:
    """Mirror-descent step ``exp_G(log_G(w) - eta * grad)``, then projection."""
    return _md_step(cfg, check_simplex(w_t), grad, eta_t)[0]


def mmd_step(cfg: DescentConfig, w_t, grad, eta_t: float) -> np.ndarray:
    """Mirror-less step ``[w - eta * grad / log_G'(w)]_+``, then projection."""
    return _mmd_step(cfg, check_simplex(w_t), grad, eta_t)[0]


def _tangent_norm(g):
    return float(np.max(np.abs(g - g.mean())))


def run(cfg: DescentConfig, problem: Problem, w0=None) -> Trace:
    """Iterate the configured update on ``problem`` starting from ``w0``.

    Batch problems stop once the tangent-space sup-norm of the gradient is
    at most ``cfg.grad_tol`` or after ``cfg.max_iters`` steps.  Online
    problems consume one round per step; their trace also carries the
    cumulative log-wealth ``sum_t ln(r_t . w_t)``.

    A failing step is retried with the step size halved, up to five times;
    after that :class:`StepFailure` is raised with the partial trace
    attached as ``exc.trace``.
    """
    if w0 is None:
        w0 = np.full(problem.dim, 1.0 / problem.dim)
    w = check_simplex(w0).copy()
    if w.size != problem.dim:
        raise InvalidParams(f"w0 has dimension {w.size}, problem has {problem.dim}")
    step = _md_step if cfg.variant == "md" else _mmd_step
    trace = Trace()
    n_steps = min(cfg.max_iters, problem.n_rounds) if problem.sequential else cfg.max_iters
    log_wealth = 0.0
    accepted, iters = True, 0

    def gradient(u, t):
        if cfg.normalize_loss:
            return normalized_grad(lambda z: problem.grad(z, t), u)
        return np.asarray(problem.grad(u, t), dtype=float)

    for t in range(n_steps + 1):
        if problem.sequential and t == n_steps:
            break
        loss = problem.loss(w, t)
        g = gradient(w, t)
        gnorm = _tangent_norm(g)
        trace.records.append(TraceRecord(t, w.copy(), loss, gnorm, accepted, iters))
        if problem.sequential:
            log_wealth -= loss
        elif gnorm <= cfg.grad_tol:
            trace.converged = True
            break
        if t == n_steps:
            break

        eta_t = cfg.eta_at(t + 1)
        accepted = True
        for attempt in range(MAX_HALVINGS + 1):
            try:
                w_new, iters = step(cfg, w, g, eta_t)
                if not problem.sequential and not np.isfinite(problem.loss(w_new, t)):
                    raise StepFailure("non-finite loss after step")
                break
            except (StepFailure, DegenerateState, DomainError) as exc:
                if attempt == MAX_HALVINGS:
                    trace.w_final = w
                    err = StepFailure(f"step {t} failed after {MAX_HALVINGS} halvings: {exc}")
                    err.trace = trace
                    raise err from exc
                eta_t *= 0.5
                accepted = False
        w = w_new

    if problem.sequential:
        trace.converged = True
        trace.log_wealth = log_wealth
    trace.w_final = w
    return trace
