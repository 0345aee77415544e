"""Numeric deformed exponentials.

Families without a closed-form inverse are inverted by safeguarded Newton
iteration on ``u = ln x``.  A bracket around ``x = 1`` is widened
geometrically until it contains the root, so the logarithm is evaluated far
from 1 only when the target lies there.  A few bisection steps shrink it,
then Newton steps using the analytic derivative take over, falling back to
bisection whenever a Newton step leaves the bracket.  All of this is
vectorized over the targets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .exceptions import BracketError, InvalidParams, NoConvergence
from .linkfn import LinkFamily, _checked, _out

# exp() over/underflows beyond these
_U_MIN, _U_MAX = -700.0, 700.0
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class InversionSettings:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    max_iters: int = 200
    # initial bracket; widened geometrically until it contains the root
    bracket_lo: float = 0.5
    bracket_hi: float = 2.0
    series_order: int = 3

    def __post_init__(self):
        problems = []
        if not 0 < self.bracket_lo < self.bracket_hi:
            problems.append("need 0 < bracket_lo < bracket_hi")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            problems.append("tolerances must be positive")
        if self.max_iters < 1:
            problems.append("max_iters must be >= 1")
        if self.series_order not in (2, 3):
            problems.append("series_order must be 2 or 3")
        if problems:
            raise InvalidParams(problems)


DEFAULT_SETTINGS = InversionSettings()


def _residual(family, u, y):
    with np.errstate(all="ignore"):
        return family._log(np.exp(u)) - y


def _bracket(family, y, settings, x0=None):
    if x0 is None:
        lo = np.full_like(y, np.log(settings.bracket_lo))
        hi = np.full_like(y, np.log(settings.bracket_hi))
    else:
        u0 = np.log(np.broadcast_to(np.asarray(x0, dtype=float), y.shape))
        lo, hi = u0 - 0.25, u0 + 0.25
    width = hi - lo
    for _ in range(64):
        f_lo = _residual(family, lo, y)
        need = ~(f_lo <= 0) & (lo > _U_MIN)
        if not need.any():
            break
        width = 2 * width
        lo = np.where(need, np.maximum(lo - width, _U_MIN), lo)
    width = hi - lo
    for _ in range(64):
        f_hi = _residual(family, hi, y)
        need = ~(f_hi >= 0) & (hi < _U_MAX)
        if not need.any():
            break
        width = 2 * width
        hi = np.where(need, np.minimum(hi + width, _U_MAX), hi)
    f_lo = _residual(family, lo, y)
    f_hi = _residual(family, hi, y)
    bad = ~((f_lo <= 0) & (f_hi >= 0))
    if bad.any():
        yb = y[bad][0]
        raise BracketError(
            f"{family!r}: y={yb!r} is outside the achievable range of the logarithm"
        )
    return lo, hi


def invert_with_stats(family: LinkFamily, y, settings: InversionSettings = DEFAULT_SETTINGS, x0=None):
    """Like :func:`invert_monotone` but also return the iteration count used.

    ``x0`` is an optional starting guess; the initial bracket is then a
    narrow interval around it instead of ``[bracket_lo, bracket_hi]``.
    """
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    if not np.all(np.isfinite(y_arr)):
        raise BracketError("cannot invert a non-finite value")
    lo, hi = _bracket(family, y_arr, settings, x0)
    tol = settings.abs_tol + settings.rel_tol * np.abs(y_arr)

    # coarse bisection
    iters = 0
    while iters < settings.max_iters:
        wide = (hi - lo) > 0.5
        if not wide.any():
            break
        mid = 0.5 * (lo + hi)
        f = _residual(family, mid, y_arr)
        lo = np.where(wide & (f <= 0), mid, lo)
        hi = np.where(wide & (f > 0), mid, hi)
        iters += 1

    u = 0.5 * (lo + hi)
    prev = hi - lo
    active = np.ones(y_arr.shape, dtype=bool)
    while active.any():
        if iters >= settings.max_iters:
            raise NoConvergence(
                f"{family!r}: inversion did not converge in {settings.max_iters} iterations"
            )
        iters += 1
        x = np.exp(u)
        with np.errstate(all="ignore"):
            f = family._log(x) - y_arr
            slope = x * family._dlog(x)
            step = f / slope
        lo = np.where(active & (f <= 0), u, lo)
        hi = np.where(active & (f >= 0), u, hi)
        u_new = u - step
        # a step that fails to halve the previous one is not contracting (noisy f); bisect
        off = ~np.isfinite(u_new) | (u_new < lo) | (u_new > hi) | (np.abs(step) > 0.5 * prev)
        u_new = np.where(off, 0.5 * (lo + hi), u_new)
        du = np.abs(u_new - u)
        scale = np.maximum(1.0, np.abs(u))
        # smallest step the rounding error in f can resolve; matters where the slope is tiny
        with np.errstate(all="ignore"):
            resolution = 8 * _EPS * np.maximum(1.0, np.abs(y_arr)) / np.abs(slope)
        step_ok = (du <= np.maximum(1e-12 * scale, resolution)) | (hi - lo <= 2 * du)
        done = (f == 0) | ((np.abs(f) <= tol) & step_ok) | ((hi - lo) <= 4e-16 * scale)
        prev = np.where(active, du, prev)
        # a bisection midpoint is unevaluated, so on exit keep the point that passed
        u = np.where(active & ~(f == 0) & ~(done & off), u_new, u)
        active &= ~done
    return _out(np.exp(u).reshape(np.shape(y))), iters


def invert_monotone(family: LinkFamily, y, settings: InversionSettings = DEFAULT_SETTINGS):
    """Solve ``log_eval(family, x) = y`` for ``x > 0``.

    Raises
    ------
    BracketError
        If ``y`` is outside the range of the logarithm even after the
        bracket has been widened to ``exp(+-700)``.
    NoConvergence
        If ``settings.max_iters`` iterations are not enough.
    """
    _checked(family)
    return invert_with_stats(family, y, settings)[0]


def deformed_exp(family: LinkFamily, y, settings: InversionSettings = DEFAULT_SETTINGS, closed_form=True):
    """Deformed exponential: closed form where available, numeric otherwise."""
    _checked(family)
    if closed_form and family.has_closed_exp:
        return _out(family._exp(y))
    return invert_with_stats(family, y, settings)[0]


def exp_series(a1: float, a2: float, y, order: int = 3):
    """Truncated power series of the inverse of ``u + a1 u**2/2 + a2 u**3/6``.

    ``1 + y + (1 - a1) y**2 / 2 + (1 - 3 a1 + 3 a1**2 - a2) y**3 / 6``;
    the cubic term is dropped when ``order == 2``.
    """
    y = np.asarray(y, dtype=float)
    c2 = 0.5 * (1.0 - a1)
    out = 1.0 + y + c2 * y**2
    if order >= 3:
        c3 = (1.0 - 3.0 * a1 + 3.0 * a1**2 - a2) / 6.0
        out = out + c3 * y**3
    return _out(out)


@dataclass(frozen=True)
class LookupTable:
    """Tabulated inverse of a deformed logarithm on a log-spaced grid."""

    family: LinkFamily
    xs: np.ndarray
    ys: np.ndarray
    interp: PchipInterpolator

    @property
    def y_range(self):
        return float(self.ys[0]), float(self.ys[-1])


def build_lookup(family: LinkFamily, grid_size: int = 1024, x_min: float = 1e-6, x_max: float = 1e6) -> LookupTable:
    if grid_size < 2:
        raise InvalidParams("grid_size must be >= 2")
    _checked(family)
    xs = np.logspace(np.log10(x_min), np.log10(x_max), grid_size)
    ys = family._log(xs)
    if not np.all(np.diff(ys) > 0):
        raise InvalidParams(f"{family!r} is not strictly increasing on the table grid")
    xs.setflags(write=False)
    ys.setflags(write=False)
    return LookupTable(family, xs, ys, PchipInterpolator(ys, np.log(xs)))


def lookup_invert(table: LookupTable, y):
    """Invert through the table: monotone cubic interpolation of ``ln x``, then one Newton polish."""
    y = np.asarray(y, dtype=float)
    lo, hi = table.y_range
    if np.any(y < lo) or np.any(y > hi):
        raise BracketError(f"y outside the table range [{lo}, {hi}]")
    u = table.interp(y)
    x = np.exp(u)
    f = table.family._log(x) - y
    x = x * np.exp(-f / (x * table.family._dlog(x)))
    return _out(x)
