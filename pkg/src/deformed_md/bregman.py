"""Potentials (antiderivatives of link functions) and Bregman divergences.

The potential is anchored at ``F(1) = 0``.  Power-law families have exact
antiderivatives; the rest go through adaptive Gauss-Kronrod quadrature.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .exceptions import DomainError, LengthMismatch, QuadratureFailure
from .linkfn import (
    KLS,
    Euler,
    ExtKaniadakis,
    Identity,
    Kaniadakis,
    LinkFamily,
    Natural,
    ThreeParam,
    Tsallis,
    SINGULAR_BAND,
    _checked,
    _out,
    _positive,
    _tlog,
)


def _powint(x, p):
    # integral of t**p over [1, x]
    return _tlog(x, p + 1.0)


def _closed_potential(family, x):
    if isinstance(family, Natural):
        return x * np.log(x) - x + 1.0
    if isinstance(family, Identity):
        return 0.5 * (x - 1.0) ** 2
    if isinstance(family, Tsallis):
        g = 1.0 - family.q
        if abs(g) < 1e-4:
            return None
        return (_powint(x, g) - (x - 1.0)) / g
    if isinstance(family, Kaniadakis):
        k = family.kappa
        if abs(k) < SINGULAR_BAND:
            return x * np.log(x) - x + 1.0
        return (_powint(x, k) - _powint(x, -k)) / (2 * k)
    if isinstance(family, KLS):
        k, r = family.kappa, family.r
        if abs(k) < SINGULAR_BAND:
            return None
        return (_powint(x, r + k) - _powint(x, r - k)) / (2 * k)
    if isinstance(family, Euler):
        a, b = family.a, family.b
        return (_powint(x, a) - _powint(x, b)) / (a - b)
    if isinstance(family, ExtKaniadakis):
        a, s = family.alpha, family.sigma
        if abs(s) < SINGULAR_BAND:
            return x * np.log(x) - x + 1.0
        return (_powint(x, s) - a * _powint(x, -s) + (a - 1.0) * (x - 1.0)) / ((1.0 + a) * s)
    if isinstance(family, ThreeParam):
        up, dn, p, m, den = family._coefs()
        return (up * _powint(x, p) - dn * _powint(x, m) - (up - dn) * (x - 1.0)) / den
    return None


@dataclass(frozen=True)
class Potential:
    """Convex generative function ``F(x) = integral of log over [1, x]``."""

    family: LinkFamily
    tol: float = 1e-10

    def _quad(self, x):
        out = np.empty_like(x)
        f = self.family._log
        for i, xi in np.ndenumerate(x):
            with warnings.catch_warnings():
                # the error estimate is checked below
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                val, err = integrate.quad(
                    lambda t: float(f(np.asarray(t))), 1.0, float(xi),
                    epsabs=self.tol, epsrel=self.tol, limit=200,
                )
            if not err <= 10 * self.tol * max(1.0, abs(val)):
                raise QuadratureFailure(
                    f"potential of {self.family!r} at x={xi}: error estimate {err:.3g}"
                )
            out[i] = val
        return out

    def _eval(self, x):
        closed = _closed_potential(self.family, x)
        return self._quad(x) if closed is None else closed


def potential_eval(pot: Potential, x):
    """Evaluate ``F(x)``; raises :class:`DomainError` for ``x <= 0``."""
    _checked(pot.family)
    return _out(pot._eval(_positive(x)))


def bregman_div(pot: Potential, w, v) -> float:
    """``sum_i F(w_i) - F(v_i) - (w_i - v_i) * log(v_i)``."""
    _checked(pot.family)
    w = np.atleast_1d(np.asarray(w, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if w.shape != v.shape:
        raise LengthMismatch(f"shapes differ: {w.shape} vs {v.shape}")
    if not (np.all(w > 0) and np.all(v > 0)):
        raise DomainError("Bregman divergence needs strictly positive vectors")
    fw, fv = pot._eval(w), pot._eval(v)
    return float(np.sum(fw - fv - (w - v) * pot.family._log(v)))
