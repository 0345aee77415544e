"""Catalog of deformed logarithms used as link functions.

Every family is a frozen dataclass exposing the logarithm, its first two
analytic derivatives and, where one exists in closed form, its inverse
(the deformed exponential).  All methods are vectorized over numpy arrays.

The module-level functions (:func:`log_eval`, :func:`dlog_eval`,
:func:`exp_closed`, :func:`validate_params`, :func:`entropy`,
:func:`tempesta_series_coeffs`) validate their inputs and are the public
entry points; the ``_log``/``_dlog``/``_d2log``/``_exp`` methods skip
validation and are meant for inner loops.

Most closed forms are written through ``expm1``/``exprel``/``sinh`` so that
they stay accurate close to their singular parameter values; inside a band
of width ``SINGULAR_BAND`` around those values the limiting branch is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from functools import cached_property
from typing import ClassVar

import numpy as np
from scipy.special import expit, exprel

from .exceptions import DomainError, InvalidParams
from .generating import GeneratingFunction, make_generating_function

SINGULAR_BAND = 1e-12
GRID = np.logspace(-6, 6, 64)


def _positive(x):
    x = np.asarray(x, dtype=float)
    if not np.all(x > 0):
        raise DomainError("deformed logarithms are defined for x > 0 only")
    return x


def _out(a):
    a = np.asarray(a, dtype=float)
    return float(a) if a.ndim == 0 else a


def _tlog(x, p):
    # (x**p - 1) / p, exact at p == 0
    t = np.log(x)
    return t * exprel(p * t)


@dataclass(frozen=True)
class LinkFamily:
    """Base class of every deformed logarithm."""

    tag: ClassVar[str] = ""

    def _log(self, x):
        raise NotImplementedError

    def _dlog(self, x):
        raise NotImplementedError

    def _d2log(self, x):
        raise NotImplementedError

    def _exp(self, y):
        """Closed-form inverse of ``_log``, or ``None`` if there is none."""
        return None

    def _violations(self) -> list[str]:
        return []

    @cached_property
    def violations(self) -> tuple[str, ...]:
        return tuple(self._violations())

    @property
    def has_closed_exp(self) -> bool:
        return type(self)._exp is not LinkFamily._exp

    def params(self) -> dict:
        """Hyperparameters as a plain mapping (config-file representation)."""
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class Natural(LinkFamily):
    tag: ClassVar[str] = "natural"

    def _log(self, x):
        return np.log(x)

    def _dlog(self, x):
        return 1.0 / x

    def _d2log(self, x):
        return -1.0 / x**2

    def _exp(self, y):
        return np.exp(y)


_NATURAL = Natural()


@dataclass(frozen=True)
class Identity(LinkFamily):
    """Pseudo-family ``log(x) = x - 1`` whose potential is half the squared norm.

    Not strictly concave, hence excluded from :data:`CATALOG`; it turns the
    mirror-less update into projected gradient descent.
    """

    tag: ClassVar[str] = "identity"

    def _log(self, x):
        return x - 1.0

    def _dlog(self, x):
        return np.ones_like(x)

    def _d2log(self, x):
        return np.zeros_like(x)

    def _exp(self, y):
        y = np.asarray(y, dtype=float)
        if np.any(y <= -1.0):
            raise DomainError("identity exponential requires y > -1")
        return 1.0 + y


@dataclass(frozen=True)
class Tsallis(LinkFamily):
    q: float = 0.7
    tag: ClassVar[str] = "tsallis"

    @property
    def _natural(self):
        return abs(1.0 - self.q) < SINGULAR_BAND

    def _log(self, x):
        if self._natural:
            return np.log(x)
        return _tlog(x, 1.0 - self.q)

    def _dlog(self, x):
        return np.power(x, -self.q)

    def _d2log(self, x):
        return -self.q * np.power(x, -self.q - 1.0)

    def _exp(self, y):
        y = np.asarray(y, dtype=float)
        if self._natural:
            return np.exp(y)
        g = 1.0 - self.q
        base = 1.0 + g * y
        if g < 0 and np.any(base <= 0):
            raise DomainError(
                f"Tsallis q={self.q} exponential is unbounded for y >= {-1.0 / g}"
            )
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.exp(np.log1p(g * y) / g)
        return np.where(base > 0, out, 0.0)

    def _violations(self):
        if not (np.isfinite(self.q) and self.q > 0):
            return [f"q must be > 0 (got q={self.q})"]
        return []


def _sinhc(k, t):
    # sinh(k t) / k, exact at k == 0
    kt = k * t
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.where(kt == 0, t, np.sinh(kt) / np.where(k == 0, 1.0, k))
    return r


@dataclass(frozen=True)
class Kaniadakis(LinkFamily):
    kappa: float = 0.5
    tag: ClassVar[str] = "kaniadakis"

    def _log(self, x):
        return _sinhc(self.kappa, np.log(x))

    def _dlog(self, x):
        return np.cosh(self.kappa * np.log(x)) / x

    def _d2log(self, x):
        kt = self.kappa * np.log(x)
        return (self.kappa * np.sinh(kt) - np.cosh(kt)) / x**2

    def _exp(self, y):
        y = np.asarray(y, dtype=float)
        k = self.kappa
        if abs(k) < SINGULAR_BAND:
            return np.exp(y)
        return np.exp(np.arcsinh(k * y) / k)

    def _violations(self):
        if not abs(self.kappa) <= 1:
            return [f"kappa not in [-1, 1] (got kappa={self.kappa})"]
        return []


@dataclass(frozen=True)
class ExtKaniadakis(LinkFamily):
    """Logarithm generated by ``phi(x) = 1/x``:
    ``(x**s - alpha*x**-s + alpha - 1) / ((1 + alpha) * s)``."""

    alpha: float = 2.0
    sigma: float = 0.5
    tag: ClassVar[str] = "ext_kaniadakis"

    def _log(self, x):
        a, s = self.alpha, self.sigma
        if abs(s) < SINGULAR_BAND:
            return np.log(x)
        t = np.log(x)
        return (np.expm1(s * t) - a * np.expm1(-s * t)) / ((1.0 + a) * s)

    def _dlog(self, x):
        a, s = self.alpha, self.sigma
        return (np.power(x, s) + a * np.power(x, -s)) / ((1.0 + a) * x)

    def _d2log(self, x):
        a, s = self.alpha, self.sigma
        return ((s - 1.0) * np.power(x, s) - a * (s + 1.0) * np.power(x, -s)) / (
            (1.0 + a) * x**2
        )

    def _violations(self):
        out = []
        if not self.alpha >= 0:
            out.append(f"alpha must be >= 0 (got alpha={self.alpha})")
        if not abs(self.sigma) <= 1:
            out.append(f"sigma not in [-1, 1] (got sigma={self.sigma})")
        if self.alpha == 0 and self.sigma == 1:
            out.append("alpha = 0 with sigma = 1 is linear, not strictly concave")
        return out


@dataclass(frozen=True)
class KLS(LinkFamily):
    """Two-parameter logarithm ``x**r * (x**kappa - x**-kappa) / (2 kappa)``."""

    kappa: float = 0.4
    r: float = 0.2
    tag: ClassVar[str] = "kls"

    def _parts(self, x):
        t = np.log(x)
        s = _sinhc(self.kappa, t)
        c = np.cosh(self.kappa * t)
        return t, s, c, np.exp(self.r * t)

    def _log(self, x):
        _, s, _, xr = self._parts(x)
        return xr * s

    def _dlog(self, x):
        _, s, c, xr = self._parts(x)
        return xr * (self.r * s + c) / x

    def _d2log(self, x):
        _, s, c, xr = self._parts(x)
        r, k = self.r, self.kappa
        return xr * ((r * r - r + k * k) * s + (2 * r - 1) * c) / x**2

    def _violations(self):
        k, r = self.kappa, self.r
        out = []
        if not abs(k) <= 1:
            out.append(f"kappa not in [-1, 1] (got kappa={k})")
        upper = 0.5 - abs(0.5 - abs(k))
        if not (-abs(k) <= r <= upper):
            out.append(
                f"r must satisfy -|kappa| <= r <= 1/2 - |1/2 - |kappa|| = {upper} (got r={r})"
            )
        return out


@dataclass(frozen=True)
class ThreeParam(LinkFamily):
    """Kaniadakis (kappa, r, lambda) logarithm; reduces to KLS at ``lam = 1``."""

    kappa: float = 0.4
    r: float = 0.2
    lam: float = 2.0
    tag: ClassVar[str] = "three_param"

    def _coefs(self):
        k, r, lam = self.kappa, self.r, self.lam
        up, dn = lam**k, lam**-k
        den = (r + k) * up - (r - k) * dn
        return up, dn, r + k, r - k, den

    def _log(self, x):
        up, dn, p, m, den = self._coefs()
        t = np.log(x)
        return (up * np.expm1(p * t) - dn * np.expm1(m * t)) / den

    def _dlog(self, x):
        up, dn, p, m, den = self._coefs()
        return (up * p * np.power(x, p) - dn * m * np.power(x, m)) / (den * x)

    def _d2log(self, x):
        up, dn, p, m, den = self._coefs()
        return (
            up * p * (p - 1) * np.power(x, p) - dn * m * (m - 1) * np.power(x, m)
        ) / (den * x**2)

    def _violations(self):
        k, r, lam = self.kappa, self.r, self.lam
        out = []
        if not lam > 0:
            out.append(f"lam must be > 0 (got lam={lam})")
        if not abs(k) <= 1:
            out.append(f"kappa not in [-1, 1] (got kappa={k})")
        if not (-abs(k) < r < abs(k)):
            out.append(f"r must satisfy -|kappa| < r < |kappa| (got r={r}, kappa={k})")
        if not r <= 1 - abs(k):
            out.append(f"r must satisfy r <= 1 - |kappa| for concavity (got r={r})")
        return out


@dataclass(frozen=True)
class HTG(LinkFamily):
    """Hanel-Thurner-Gell-Mann (a, b)-logarithm ``(x**(a-b) - 1) / (a - b*x**(a-b))``."""

    a: float = 0.3
    b: float = -0.2
    tag: ClassVar[str] = "htg"

    def _parts(self, x):
        a, b = self.a, self.b
        d = a - b
        t = np.log(x)
        z = np.exp(d * t)
        e = t * exprel(d * t)  # (z - 1) / d
        # 1 - b*e == (a - b*z) / d; with a*b <= 0 the second form has no cancellation
        w = (a - b * z) / d if d != 0 else np.ones_like(t)
        return d, z, e, w

    def _log(self, x):
        _, _, e, w = self._parts(x)
        return e / w

    def _dlog(self, x):
        _, z, _, w = self._parts(x)
        return z / (x * w**2)

    def _d2log(self, x):
        d, z, _, w = self._parts(x)
        first = z / w**2
        second = z * (d * w + 2 * self.b * z) / w**3
        return (second - first) / x**2

    def _exp(self, y):
        y = np.asarray(y, dtype=float)
        a, b = self.a, self.b
        pa, pb = 1.0 + a * y, 1.0 + b * y
        if np.any(pa <= 0) or np.any(pb <= 0):
            raise DomainError(
                f"HTG(a={a}, b={b}) exponential is defined for 1 + a*y > 0 and 1 + b*y > 0"
            )
        d = a - b
        if abs(d) < SINGULAR_BAND:
            return np.exp(y / pa)
        return np.exp((np.log1p(a * y) - np.log1p(b * y)) / d)

    def _violations(self):
        return _htg_violations(self.a, self.b)


def _htg_violations(a, b):
    out = []
    if not a * b <= 0:
        out.append(
            f"a*b <= 0 is required for a pole-free logarithm on x > 0 (got a={a}, b={b})"
        )
    elif max(a, b) > 0 and not abs(a - b) < 1:
        out.append(f"|a - b| < 1 is required for concavity (got a={a}, b={b})")
    return out


_H_KINDS = ("tanh", "arctan")


def _h_complement(kind, v):
    """``1 - h(v)`` for ``v >= 0`` without cancellation."""
    if kind == "tanh":
        return 2.0 * expit(-2.0 * v)
    with np.errstate(divide="ignore"):
        return (2.0 / np.pi) * np.arctan(2.0 / (np.pi * v))


def _h(kind, u):
    """Return h, h', h'' for the odd saturating functions of the general HTG form."""
    if kind == "tanh":
        th = np.tanh(u)
        s = 1.0 - th**2
        return th, s, -2.0 * th * s
    v = 0.5 * np.pi * u
    den = 1.0 + v**2
    return (2.0 / np.pi) * np.arctan(v), 1.0 / den, -np.pi * v / den**2


@dataclass(frozen=True)
class HTGGeneral(LinkFamily):
    """HTG logarithm with a general odd saturating ``h`` (``tanh`` or scaled ``arctan``)."""

    a: float = 0.3
    b: float = -0.2
    h_kind: str = "arctan"
    tag: ClassVar[str] = "htg_general"

    def _parts(self, x):
        a, b = self.a, self.b
        d, c = a - b, 0.5 * (a + b)
        t = np.log(x)
        if abs(d) < SINGULAR_BAND:
            g, g1, g2 = t, np.ones_like(t), np.zeros_like(t)
            return c, g, g1, g2, 1.0 - c * g
        v = 0.5 * d * t
        h0, h1, h2 = _h(self.h_kind, v)
        g, g1, g2 = (2.0 / d) * h0, h1, 0.5 * d * h2
        # 1 - rho*h with |rho| <= 1, rewritten around h = +-1 to avoid cancellation
        rho = 2.0 * c / d
        hc = _h_complement(self.h_kind, np.abs(v))
        w = np.where(v >= 0, (1.0 - rho) + rho * hc, (1.0 + rho) - rho * hc)
        return c, g, g1, g2, w

    def _log(self, x):
        _, g, _, _, w = self._parts(x)
        return g / w

    def _dlog(self, x):
        _, _, g1, _, w = self._parts(x)
        return g1 / (x * w**2)

    def _d2log(self, x):
        c, _, g1, g2, w = self._parts(x)
        first = g1 / w**2
        second = (g2 * w + 2 * c * g1**2) / w**3
        return (second - first) / x**2

    def _exp(self, y):
        if self.h_kind != "tanh":
            return None
        return HTG(self.a, self.b)._exp(y)

    @property
    def has_closed_exp(self):
        return self.h_kind == "tanh"

    def _violations(self):
        if self.h_kind not in _H_KINDS:
            return [f"h_kind must be one of {_H_KINDS} (got {self.h_kind!r})"]
        out = _htg_violations(self.a, self.b)
        if not out and self.h_kind != "tanh":
            out = _shape_violations(self)
        return out


@dataclass(frozen=True)
class KS(LinkFamily):
    """Kaniadakis-Scarfone (kappa, lambda)-logarithm."""

    kappa: float = 0.5
    lam: float = 2.0
    tag: ClassVar[str] = "ks"

    def _log(self, x):
        k, l = self.kappa, np.log(self.lam)
        t = np.log(x)
        # sinh(k(l+t)) - sinh(k l) = 2 cosh(k(l + t/2)) sinh(k t/2)
        return 2.0 * np.cosh(k * (l + 0.5 * t)) * _sinhc(k, 0.5 * t) / np.cosh(k * l)

    def _dlog(self, x):
        k, l = self.kappa, np.log(self.lam)
        return np.cosh(k * (l + np.log(x))) / (x * np.cosh(k * l))

    def _d2log(self, x):
        k, l = self.kappa, np.log(self.lam)
        u = k * (l + np.log(x))
        return (k * np.sinh(u) - np.cosh(u)) / (x**2 * np.cosh(k * l))

    def _exp(self, y):
        y = np.asarray(y, dtype=float)
        k, l = self.kappa, np.log(self.lam)
        if abs(k) < SINGULAR_BAND:
            return np.exp(y)
        v = y * np.cosh(k * l) + np.sinh(k * l) / k
        return np.exp(np.arcsinh(k * v) / k - l)

    def _violations(self):
        out = []
        if not self.lam > 0:
            out.append(f"lam must be > 0 (got lam={self.lam})")
        if not abs(self.kappa) <= 1:
            out.append(f"kappa not in [-1, 1] (got kappa={self.kappa})")
        return out


@dataclass(frozen=True)
class Euler(LinkFamily):
    """Euler (Borges-Roditi) logarithm ``(x**a - x**b) / (a - b)``."""

    a: float = 0.6
    b: float = -0.3
    tag: ClassVar[str] = "euler"

    def _log(self, x):
        t = np.log(x)
        d = self.a - self.b
        return np.exp(self.b * t) * t * exprel(d * t)

    def _dlog(self, x):
        a, b = self.a, self.b
        return (a * np.power(x, a - 1) - b * np.power(x, b - 1)) / (a - b)

    def _d2log(self, x):
        a, b = self.a, self.b
        return (
            a * (a - 1) * np.power(x, a - 2) - b * (b - 1) * np.power(x, b - 2)
        ) / (a - b)

    def _violations(self):
        a, b = self.a, self.b
        if a == b:
            return [f"a != b is required (got a=b={a})"]
        lo, hi = min(a, b), max(a, b)
        out = []
        if not (lo <= 0 <= hi <= 1):
            out.append(
                f"min(a, b) <= 0 <= max(a, b) <= 1 is required for a concave, "
                f"increasing logarithm (got a={a}, b={b})"
            )
        elif (hi, lo) == (1, 0):
            out.append("(a, b) = (1, 0) is linear, not strictly concave")
        return out


@dataclass(frozen=True)
class Tempesta(LinkFamily):
    """General (phi, alpha, sigma)-logarithm for an arbitrary generating function.

    ``log(x) = [phi(alpha*x**-s) - x**-s + 1 - phi(alpha)] / (s * (1 - alpha*phi'(alpha)))``
    """

    phi: GeneratingFunction = field(default_factory=lambda: make_generating_function("reciprocal"))
    alpha: float = 0.5
    sigma: float = 0.4
    tag: ClassVar[str] = "tempesta"

    @cached_property
    def _norm(self):
        return float(self._one_minus(np.asarray(self.alpha, dtype=float)))

    def _one_minus(self, u):
        # 1 - alpha*phi'(u) with the linear part of phi combined exactly
        a = self.alpha
        return (1.0 - a * self.phi.linear) - a * self.phi.rest_slope(u)

    @property
    def _natural(self):
        return abs(self.sigma) < SINGULAR_BAND

    def _log(self, x):
        if self._natural:
            return np.log(x)
        a, s = self.alpha, self.sigma
        xs = np.power(x, -s)
        rest_a = self.phi.rest_value(np.asarray(a, dtype=float))
        lin = a * self.phi.linear - 1.0
        num = self.phi.rest_value(a * xs) - rest_a + lin * np.expm1(-s * np.log(x))
        return num / (s * self._norm)

    def _dlog(self, x):
        if self._natural:
            return 1.0 / x
        a, s = self.alpha, self.sigma
        xs = np.power(x, -s)
        return xs * self._one_minus(a * xs) / (x * self._norm)

    def _d2log(self, x):
        if self._natural:
            return -1.0 / x**2
        a, s = self.alpha, self.sigma
        xs = np.power(x, -s)
        u = a * xs
        inner = -(s + 1.0) * self._one_minus(u) + s * a * u * self.phi.d2phi(u)
        return xs * inner / (x**2 * self._norm)

    def params(self):
        return {
            "phi": {"kind": self.phi.label, **self.phi.params},
            "alpha": self.alpha,
            "sigma": self.sigma,
        }

    def _violations(self):
        if self._natural:
            return []
        if not np.isfinite(self._norm) or abs(self._norm) < SINGULAR_BAND:
            return [f"alpha*phi'(alpha) = 1 (alpha={self.alpha}); the prefactor is singular"]
        a, s, D = self.alpha, self.sigma, self._norm
        u = a * np.power(GRID, s)
        with np.errstate(all="ignore"):
            g = self._one_minus(u)
            mono = g / D
            conc = ((1.0 + s) * g - s * a * u * self.phi.d2phi(u)) / D
        for name, vals in (("monotonicity", mono), ("concavity condition", conc)):
            bad = np.flatnonzero(~(vals > 0))
            if bad.size:
                x = GRID[bad[0]]
                return [f"{name} fails at x={x:.3g} (value {vals[bad[0]]:.3g})"]
        return []


def _shape_violations(family: LinkFamily) -> list[str]:
    with np.errstate(all="ignore"):
        d1 = family._dlog(GRID)
        d2 = family._d2log(GRID)
    bad = np.flatnonzero(~(d1 > 0))
    if bad.size:
        return [f"log is not increasing at x={GRID[bad[0]]:.3g}"]
    bad = np.flatnonzero(~(d2 < 0))
    if bad.size:
        return [f"log is not strictly concave at x={GRID[bad[0]]:.3g}"]
    return []


CATALOG: dict[str, type[LinkFamily]] = {
    cls.tag: cls
    for cls in (
        Natural,
        Tsallis,
        Kaniadakis,
        ExtKaniadakis,
        KLS,
        ThreeParam,
        HTG,
        HTGGeneral,
        KS,
        Euler,
        Tempesta,
    )
}

PARAM_RANGES = {
    "natural": "no parameters",
    "tsallis": "q > 0 (q = 1 is the natural logarithm)",
    "kaniadakis": "kappa in [-1, 1] (kappa = 0 is the natural logarithm)",
    "ext_kaniadakis": "alpha >= 0, sigma in [-1, 1]",
    "kls": "kappa in [-1, 1], -|kappa| <= r <= 1/2 - |1/2 - |kappa||",
    "three_param": "lam > 0, kappa in [-1, 1], -|kappa| < r < |kappa|, r <= 1 - |kappa|",
    "htg": "a*b <= 0; |a - b| < 1 when max(a, b) > 0",
    "htg_general": "as htg; h_kind in {tanh, arctan}",
    "ks": "lam > 0, kappa in [-1, 1]",
    "euler": "a != b, min(a, b) <= 0 <= max(a, b) <= 1",
    "tempesta": "phi from the generating catalog; alpha*phi'(alpha) != 1; "
    "monotonicity and concavity checked on a grid",
}


def make_family(tag: str, **params) -> LinkFamily:
    """Construct a family from its string tag and parameter mapping.

    For ``tempesta``, ``phi`` may be a :class:`GeneratingFunction` or a
    mapping ``{"kind": <catalog label>, **phi_params}``.
    """
    if tag == "identity":
        return Identity()
    try:
        cls = CATALOG[tag]
    except KeyError:
        raise InvalidParams(
            f"unknown family {tag!r}; expected one of {sorted(CATALOG)}"
        ) from None
    if cls is Tempesta and isinstance(params.get("phi"), dict):
        entry = dict(params["phi"])
        params["phi"] = make_generating_function(entry.pop("kind"), **entry)
    names = {f.name for f in fields(cls)}
    unknown = set(params) - names
    if unknown:
        raise InvalidParams(f"unknown parameters for {tag}: {sorted(unknown)}")
    try:
        return cls(**params)
    except (TypeError, ValueError) as exc:
        raise InvalidParams(str(exc)) from exc


def validate_params(family: LinkFamily) -> list[str]:
    """Return the list of constraint violations (empty when the family is valid)."""
    return list(family.violations)


def _checked(family):
    if family.violations:
        raise InvalidParams(family.violations)


def log_eval(family: LinkFamily, x):
    """Deformed logarithm of ``x`` (scalar or array, strictly positive)."""
    _checked(family)
    return _out(family._log(_positive(x)))


def dlog_eval(family: LinkFamily, x):
    """First derivative of :func:`log_eval` with respect to ``x``."""
    _checked(family)
    return _out(family._dlog(_positive(x)))


def d2log_eval(family: LinkFamily, x):
    _checked(family)
    return _out(family._d2log(_positive(x)))


def exp_closed(family: LinkFamily, y):
    """Closed-form deformed exponential, or ``None`` when the family has none.

    Raises :class:`DomainError` where the closed form diverges.  Where the
    Tsallis cut-off applies (``q < 1``) the result is exactly zero.
    """
    _checked(family)
    out = family._exp(y)
    return None if out is None else _out(out)


def entropy(family: LinkFamily, p) -> float:
    """Trace-form entropy ``sum_i p_i * log(1/p_i)`` with unit Boltzmann constant."""
    p = np.asarray(p, dtype=float)
    if not np.all(p > 0):
        raise DomainError("entropy needs strictly positive probabilities")
    return float(np.sum(p * np.asarray(log_eval(family, 1.0 / p))))


def tempesta_series_coeffs(phi: GeneratingFunction, alpha: float, sigma: float):
    """Coefficients ``(a1, a2)`` of ``log(x) = u + a1 u**2/2 + a2 u**3/6 + ...`` with ``u = ln x``."""
    _, d1, d2, d3 = (float(v) for v in phi.derivatives(alpha))
    den = alpha * d1 - 1.0
    if abs(den) < SINGULAR_BAND:
        raise InvalidParams(f"alpha*phi'(alpha) = 1 (alpha={alpha})")
    a1 = -sigma * (alpha**2 * d2 + alpha * d1 - 1.0) / den
    a2 = sigma**2 * (alpha**3 * d3 + 3 * alpha**2 * d2 + alpha * d1 - 1.0) / den
    return a1, a2


def default_family(tag: str) -> LinkFamily:
    """Catalog family with its default hyperparameters."""
    return make_family(tag)
