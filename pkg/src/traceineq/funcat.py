"""Catalog of operator monotone / operator convex functions vanishing at 0.

Every entry carries its closed-form scalar rule, derivative, and the data of
its integral representation

    monotone:  f(t) = beta*t           + integral of  s*t/(s+t)   d mu(s)
    convex:    f(t) = beta*t + gamma*t^2 + integral of  s*t^2/(s+t) d mu(s)

with mu either a point mass or an explicit density on (0, inf).  The
representation is what the trace-inequality proofs integrate over, so the
catalog stores it concretely enough to be re-evaluated by quadrature and
cross-checked against the closed form.

Entries are addressable by selector strings (``power:0.5``, ``log1p``,
``atom:2.5``, ``square``, ``qatom:1.5``) with the grammar ``name[:param]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .quadrature import de_real_line_log, tanh_sinh

MONOTONE = "monotone"
CONVEX = "convex"


@dataclass(frozen=True)
class QuadratureSpec:
    """How hard the representation integrals may work.

    ``max_level`` bounds the mesh refinement; the node budget is roughly
    2 * 9.5 * 2**max_level evaluations for the infinite-support measures.
    """

    method: str = "tanh-sinh"
    rel_tol: float = 1e-6
    max_level: int = 7

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.max_level < 1:
            raise ValueError("max_level must be >= 1")


@dataclass(frozen=True)
class PointMass:
    location: float
    weight: float = 1.0


@dataclass(frozen=True)
class Density:
    """Density w(s) of mu on ``support``; the upper end may be inf.

    ``singular_at_lower`` flags an integrable endpoint singularity of the
    *total* integrand (kernel times density) at the lower support end.
    """

    support: Tuple[float, float]
    density: Callable
    singular_at_lower: bool = False


@dataclass(frozen=True, eq=False)
class OperatorFunction:
    """One catalog entry.  ``fn`` and ``deriv`` accept float ndarrays."""

    name: str
    kind: str  # MONOTONE or CONVEX
    fn: Callable
    deriv: Callable
    beta: float = 0.0
    gamma: float = 0.0
    alpha: float = 0.0  # pinned to 0: every entry vanishes at 0
    param: Optional[float] = None
    measure: Optional[object] = None
    deriv_at_zero: Optional[float] = None
    rep_integral: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in (MONOTONE, CONVEX):
            raise ValueError(f"unknown function class {self.kind!r}")
        if self.alpha != 0.0:
            raise ValueError("catalog functions must vanish at 0 (alpha == 0)")
        if self.kind == MONOTONE:
            if self.beta < 0.0:
                raise ValueError("monotone entries need beta >= 0")
            if self.gamma != 0.0:
                raise ValueError("monotone entries carry no quadratic term")
        elif self.gamma < 0.0:
            raise ValueError("convex entries need gamma >= 0")


def eval_scalar(f: OperatorFunction, t):
    """Closed-form value of f at t >= 0 (scalar or ndarray)."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError(f"{f.name} is defined on [0, inf); got t < 0")
    out = f.fn(arr)
    return float(out) if np.isscalar(t) or arr.ndim == 0 else out


def eval_derivative(f: OperatorFunction, t):
    """f'(t) in closed form; t = 0 is allowed only if f' extends continuously."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError(f"{f.name} is defined on [0, inf); got t < 0")
    if np.any(arr == 0.0) and f.deriv_at_zero is None:
        raise ValueError(f"derivative of {f.name} undefined at t = 0")
    out = derivative_on_spectrum(f, arr)
    return float(out) if np.isscalar(t) or arr.ndim == 0 else out


def derivative_on_spectrum(f: OperatorFunction, lam: np.ndarray) -> np.ndarray:
    """Vectorized f' over nonnegative eigenvalues, with the 0-eigenvalue extension."""
    lam = np.asarray(lam, dtype=float)
    zero = lam == 0.0
    if np.any(zero):
        if f.deriv_at_zero is None:
            raise ValueError(f"derivative of {f.name} undefined at a zero eigenvalue")
        with np.errstate(all="ignore"):
            out = np.where(zero, f.deriv_at_zero, f.deriv(np.where(zero, 1.0, lam)))
        return out
    return np.asarray(f.deriv(lam), dtype=float)


def eval_via_representation(f: OperatorFunction, t: float, quad: QuadratureSpec | None = None) -> float:
    """Evaluate f(t) from its integral representation instead of the closed form.

    Point masses are summed exactly; densities are integrated in u = log s
    with a double-exponential rule anchored at s = t.  Agreement with
    :func:`eval_scalar` to the quadrature tolerance is what makes the stored
    representations trustworthy.
    """
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    quad = quad or QuadratureSpec()
    value = f.beta * t + f.gamma * t * t
    if f.measure is None:
        return value
    if isinstance(f.measure, PointMass):
        s0, w0 = f.measure.location, f.measure.weight
        if f.kind == MONOTONE:
            return value + w0 * s0 * t / (s0 + t)
        return value + w0 * s0 * t * t / (s0 + t)
    if f.rep_integral is None:
        raise ValueError(f"{f.name} has no quadrature route for its measure")
    return value + f.rep_integral(float(t), quad)


# ---------------------------------------------------------------------------
# constructors


def power(p: float, kind: str | None = None) -> OperatorFunction:
    """t^p.  Operator monotone for p in (0, 1], operator convex for p in [1, 2].

    At p = 1 both classes contain the identity; pass ``kind`` to pick the
    class explicitly (default: monotone).
    """
    p = float(p)
    if not 0.0 < p <= 2.0:
        raise ValueError(f"power exponent must lie in (0, 2], got {p:g}")
    if kind is None:
        kind = MONOTONE if p <= 1.0 else CONVEX
    if kind == MONOTONE and p > 1.0:
        raise ValueError(f"t^{p:g} is not operator monotone")
    if kind == CONVEX and p < 1.0:
        raise ValueError(f"t^{p:g} is not operator convex")

    def fn(t, p=p):
        return np.power(t, p)

    def deriv(t, p=p):
        return p * np.power(t, p - 1.0)

    dz = None if p < 1.0 else (1.0 if p == 1.0 else 0.0)
    beta = 1.0 if p == 1.0 else 0.0
    gamma = 1.0 if p == 2.0 else 0.0
    measure = None
    rep = None
    if kind == MONOTONE and p < 1.0:
        # t^p = (sin(p pi)/pi) * integral s^{p-1} t/(s+t) ds, i.e. density
        # (sin(p pi)/pi) s^{p-2} against the kernel s t/(s+t).
        coef = math.sin(math.pi * p) / math.pi
        measure = Density((0.0, math.inf), lambda s, c=coef, p=p: c * np.power(s, p - 2.0),
                          singular_at_lower=True)

        def rep(t, quad, p=p, logc=math.log(coef)):
            if t == 0.0:
                return 0.0
            lt = math.log(t)
            return de_real_line_log(
                lambda u: logc + p * u + lt - np.logaddexp(u, lt),
                center=lt, rel_tol=quad.rel_tol, max_level=quad.max_level,
            )

    elif kind == CONVEX and 1.0 < p < 2.0:
        # t^p = t * t^{p-1} with t^{p-1} Cauchy-represented: density
        # (sin((p-1) pi)/pi) s^{p-3} against the kernel s t^2/(s+t).
        coef = math.sin(math.pi * (p - 1.0)) / math.pi
        measure = Density((0.0, math.inf), lambda s, c=coef, p=p: c * np.power(s, p - 3.0),
                          singular_at_lower=True)

        def rep(t, quad, p=p, logc=math.log(coef)):
            if t == 0.0:
                return 0.0
            lt = math.log(t)
            return de_real_line_log(
                lambda u: logc + (p - 1.0) * u + 2.0 * lt - np.logaddexp(u, lt),
                center=lt, rel_tol=quad.rel_tol, max_level=quad.max_level,
            )

    return OperatorFunction(
        name=f"power:{p:g}", kind=kind, fn=fn, deriv=deriv, beta=beta, gamma=gamma,
        param=p, measure=measure, deriv_at_zero=dz, rep_integral=rep,
    )


def log1p() -> OperatorFunction:
    """log(1 + t): operator monotone, density s^{-2} on [1, inf)."""

    def rep(t, quad):
        if t == 0.0:
            return 0.0
        # In u = log s the integrand is t/(e^u + t) on [0, inf); split at the
        # turnover u = log t and truncate where the e^{-u} tail is negligible.
        u0 = max(math.log(t), 0.0)
        hi = u0 + 45.0

        def h(u, t=t):
            return t / (np.exp(u) + t)

        head = tanh_sinh(h, 0.0, u0, rel_tol=quad.rel_tol, max_level=quad.max_level) if u0 > 0 else 0.0
        return head + tanh_sinh(h, u0, hi, rel_tol=quad.rel_tol, max_level=quad.max_level)

    return OperatorFunction(
        name="log1p", kind=MONOTONE, fn=np.log1p,
        deriv=lambda t: 1.0 / (1.0 + t), deriv_at_zero=1.0,
        measure=Density((1.0, math.inf), lambda s: np.power(s, -2.0)),
        rep_integral=rep,
    )


def atom(s0: float) -> OperatorFunction:
    """s0*t/(s0+t): the monotone kernel itself, i.e. a point mass at s0."""
    s0 = float(s0)
    if s0 <= 0.0:
        raise ValueError("atom location must be positive")
    return OperatorFunction(
        name=f"atom:{s0:g}", kind=MONOTONE, param=s0,
        fn=lambda t, s0=s0: s0 * t / (s0 + t),
        deriv=lambda t, s0=s0: (s0 / (s0 + t)) ** 2,
        deriv_at_zero=1.0, measure=PointMass(s0),
    )


def qatom(s0: float) -> OperatorFunction:
    """s0*t^2/(s0+t): the convex kernel as a point mass at s0."""
    s0 = float(s0)
    if s0 <= 0.0:
        raise ValueError("atom location must be positive")
    return OperatorFunction(
        name=f"qatom:{s0:g}", kind=CONVEX, param=s0,
        fn=lambda t, s0=s0: s0 * t * t / (s0 + t),
        deriv=lambda t, s0=s0: s0 * t * (t + 2.0 * s0) / (s0 + t) ** 2,
        deriv_at_zero=0.0, measure=PointMass(s0),
    )


def square() -> OperatorFunction:
    """t^2: operator convex with gamma = 1 and empty measure."""
    return OperatorFunction(
        name="square", kind=CONVEX, fn=np.square,
        deriv=lambda t: 2.0 * t, deriv_at_zero=0.0, gamma=1.0,
    )


def catalog() -> list[OperatorFunction]:
    """Default shipped entries: power grids on both classes plus log1p,
    square, and one kernel atom per class."""
    entries = [power(i / 10.0) for i in range(1, 11)]
    entries.append(log1p())
    entries.extend([atom(1.0), atom(2.5)])
    entries.extend([power(1.0, CONVEX)])
    entries.extend([power(1.0 + i / 10.0, CONVEX) for i in range(1, 11)])
    entries.append(square())
    entries.extend([qatom(1.0), qatom(2.5)])
    return entries


def parse_function(selector: str, kind: str | None = None) -> OperatorFunction:
    """Resolve a selector string (grammar ``name[:param]``) to an entry.

    ``kind`` disambiguates ``power:1`` (the identity, which is both operator
    monotone and operator convex); elsewhere it is validated against the
    entry's class.
    """
    name, _, arg = selector.partition(":")
    name = name.strip()
    try:
        if name == "power":
            return power(float(arg), kind)
        if name == "log1p":
            entry = log1p()
        elif name == "square":
            entry = square()
        elif name == "atom":
            entry = atom(float(arg))
        elif name == "qatom":
            entry = qatom(float(arg))
        else:
            raise ValueError(f"unknown function selector {selector!r}")
    except ValueError:
        raise
    if arg and name in ("log1p", "square"):
        raise ValueError(f"{name} takes no parameter, got {selector!r}")
    if kind is not None and entry.kind != kind:
        raise ValueError(f"{selector!r} is {entry.kind}, not {kind}")
    return entry
