"""Generating functions for the Tempesta family of deformed logarithms.

A generating function is a real map ``phi`` together with its first three
analytic derivatives.  The catalog below covers the generating functions
from which the named logarithms (Tsallis, extended Kaniadakis, the
three-parameter family, HTG, Kaniadakis-Scarfone) are recovered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

Func = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class GeneratingFunction:
    """A differentiable ``phi`` with analytic derivatives up to third order.

    Parameters
    ----------
    phi, dphi, d2phi, d3phi : callable
        Vectorized maps ``ndarray -> ndarray``.
    label : str
        Short identifier, used in reprs and config files.
    params : dict
        Parameters the catalog constructor was called with.  Used to
        serialize the function back to a config entry.
    linear : float
        Coefficient ``c`` of an exact linear part, ``phi(x) = rest(x) + c*x``.
    rest : tuple of callable, optional
        ``rest`` and its first derivative.  Supplying them lets callers
        combine the linear part analytically instead of subtracting two
        large nearly equal numbers.
    """

    phi: Func
    dphi: Func
    d2phi: Func
    d3phi: Func
    label: str = "custom"
    params: dict = field(default_factory=dict, compare=False, hash=False)
    linear: float = 0.0
    rest: tuple | None = field(default=None, compare=False, hash=False)

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"GeneratingFunction({self.label}({args}))"

    def rest_value(self, x):
        """``phi(x) - linear*x``, evaluated without forming ``phi(x)`` when possible."""
        x = np.asarray(x, dtype=float)
        if self.rest is not None:
            return np.asarray(self.rest[0](x), dtype=float)
        return self.phi(x) - self.linear * x

    def rest_slope(self, x):
        """``phi'(x) - linear``."""
        x = np.asarray(x, dtype=float)
        if self.rest is not None:
            return np.asarray(self.rest[1](x), dtype=float)
        return self.dphi(x) - self.linear

    def derivatives(self, x):
        """Return ``(phi, phi', phi'', phi''')`` evaluated at ``x``."""
        x = np.asarray(x, dtype=float)
        return self.phi(x), self.dphi(x), self.d2phi(x), self.d3phi(x)


def linear(a: float = 1.0, c: float = 0.0) -> GeneratingFunction:
    """``phi(x) = a*x - c``; yields the Tsallis logarithm for any alpha with alpha*a != 1."""
    return GeneratingFunction(
        phi=lambda x: a * x - c,
        dphi=lambda x: np.full_like(x, a, dtype=float),
        d2phi=lambda x: np.zeros_like(x, dtype=float),
        d3phi=lambda x: np.zeros_like(x, dtype=float),
        label="linear",
        params={"a": a, "c": c},
        linear=a,
        rest=(lambda x: np.full_like(x, -c, dtype=float), lambda x: np.zeros_like(x, dtype=float)),
    )


def reciprocal() -> GeneratingFunction:
    """``phi(x) = 1/x``; yields the extended Kaniadakis logarithm."""
    return GeneratingFunction(
        phi=lambda x: 1.0 / x,
        dphi=lambda x: -1.0 / x**2,
        d2phi=lambda x: 2.0 / x**3,
        d3phi=lambda x: -6.0 / x**4,
        label="reciprocal",
        params={},
    )


def _power(coef: float, p: float):
    # derivatives of coef * x**p, orders 0..3
    def make(order):
        falling = 1.0
        for j in range(order):
            falling *= p - j

        def f(x):
            return coef * falling * np.power(x, p - order)

        return f

    return [make(k) for k in range(4)]


def power_combo(
    lam1: float = 1.0,
    lam2: float = 1.0,
    a: float = 0.5,
    b: float = -0.5,
    c: float = 1.0,
) -> GeneratingFunction:
    """``phi(x) = (lam1*x)**a - (lam2*x)**b + c*x``.

    With ``alpha=1, sigma=-1, c=1, lam1=lam2=lam, a=-b=kappa`` this
    generates the Kaniadakis-Scarfone logarithm.
    """
    p = _power(lam1**a, a)
    m = _power(lam2**b, b)
    lin = _power(c, 1.0)
    fs = [
        (lambda x, i=i: p[i](x) - m[i](x) + lin[i](x)) for i in range(4)
    ]
    return GeneratingFunction(
        *fs,
        label="power_combo",
        params={"lam1": lam1, "lam2": lam2, "a": a, "b": b, "c": c},
        linear=c,
        rest=tuple((lambda x, i=i: p[i](x) - m[i](x)) for i in range(2)),
    )


def three_param(kappa: float = 0.4, r: float = 0.2, lam: float = 1.0) -> GeneratingFunction:
    """``phi(x) = lam**kappa * x**(r+kappa) - lam**-kappa * x**(r-kappa) + x``."""
    p = _power(lam**kappa, r + kappa)
    m = _power(lam**-kappa, r - kappa)
    lin = _power(1.0, 1.0)
    fs = [
        (lambda x, i=i: p[i](x) - m[i](x) + lin[i](x)) for i in range(4)
    ]
    return GeneratingFunction(
        *fs,
        label="three_param",
        params={"kappa": kappa, "r": r, "lam": lam},
        linear=1.0,
        rest=tuple((lambda x, i=i: p[i](x) - m[i](x)) for i in range(2)),
    )


def htg_ratio(a: float = 0.3, b: float = -0.2) -> GeneratingFunction:
    """``phi(x) = (x**a - x**b) / (a*x**b - b*x**a) + x``.

    With ``alpha=1, sigma=-1`` this generates the HTG (a, b)-logarithm.
    Derivatives of the ratio come from repeated differentiation of
    ``numerator = ratio * denominator``.
    """
    if a == b:
        raise ValueError("htg_ratio needs a != b")
    num = [_power(1.0, a)[k] for k in range(4)]
    num_b = [_power(1.0, b)[k] for k in range(4)]
    den_b = _power(a, b)
    den_a = _power(b, a)

    def parts(x):
        n = [num[k](x) - num_b[k](x) for k in range(4)]
        m = [den_b[k](x) - den_a[k](x) for k in range(4)]
        r0 = n[0] / m[0]
        r1 = (n[1] - r0 * m[1]) / m[0]
        r2 = (n[2] - 2 * r1 * m[1] - r0 * m[2]) / m[0]
        r3 = (n[3] - 3 * r2 * m[1] - 3 * r1 * m[2] - r0 * m[3]) / m[0]
        return r0, r1, r2, r3

    return GeneratingFunction(
        phi=lambda x: parts(x)[0] + x,
        dphi=lambda x: parts(x)[1] + 1.0,
        d2phi=lambda x: parts(x)[2],
        d3phi=lambda x: parts(x)[3],
        label="htg_ratio",
        params={"a": a, "b": b},
        linear=1.0,
        rest=(lambda x: parts(x)[0], lambda x: parts(x)[1]),
    )


CATALOG = {
    "linear": linear,
    "reciprocal": reciprocal,
    "power_combo": power_combo,
    "three_param": three_param,
    "htg_ratio": htg_ratio,
}


def make_generating_function(kind: str, **params) -> GeneratingFunction:
    """Build a catalog generating function from its label and parameters."""
    try:
        factory = CATALOG[kind]
    except KeyError:
        raise ValueError(
            f"unknown generating function {kind!r}; expected one of {sorted(CATALOG)}"
        ) from None
    return factory(**params)
