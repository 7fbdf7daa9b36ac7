"""Sharp reverse Hoelder inequality for A1 weights and the inequalities behind it.

For a weight with A1 constant ``c`` and ``1 <= p < c/(c-1)``::

    (1/|I|) int_I phi^p  <=  K(c, p) * ((1/|I|) int_I phi)^p,
    K(c, p) = 1 / (c^(p-1) (c + p - c p)),

with equality for the power weight ``t^(-1 + 1/c)`` on ``(0, 1)``.

A weight with A1 constant exactly 1 is a.e. constant.  It belongs to every
class with ``c > 1``, so the admissible range of ``p`` is ``[1, inf)`` and
``K(1, p) = 1``, the limit of the formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import integrate

from .errors import DomainError, ParameterRangeError
from .maximal import a1_constant_exact, maximal_at, maximal_function, maximal_values, quadrature_edges
from .weights import (
    UNIT,
    Interval,
    PiecewiseConstantWeight,
    PowerWeight,
    dyadic_intervals,
    integrate_p,
    integrate_p_many,
)

REL_SLACK = 1e-12


@dataclass(frozen=True)
class RhiReport:
    interval: Interval
    p: float
    c: float
    lhs: float
    rhs_base: float
    sharp_k: float
    margin: float

    @property
    def passed(self) -> bool:
        return self.margin >= -REL_SLACK * abs(self.lhs)


@dataclass(frozen=True)
class IntegralCheck:
    lhs: float
    f_p: float
    passed: bool


@dataclass(frozen=True)
class SharpnessRow:
    p: float
    ratio: float
    sharp_k: float

    @property
    def ratio_over_k(self) -> float:
        return self.ratio / self.sharp_k


def critical_exponent(c: float) -> float:
    """``c/(c-1)``, or ``inf`` when ``c == 1``."""
    return math.inf if c == 1 else c / (c - 1.0)


def _check_p(c: float, p: float, *, allow_one: bool = True) -> None:
    if not c >= 1:
        raise DomainError(f"A1 constant must be >= 1, got {c!r}")
    upper = critical_exponent(c)
    ok = (1.0 <= p if allow_one else 1.0 < p) and p < upper
    if not ok:
        lb = "[1" if allow_one else "(1"
        raise ParameterRangeError(f"p = {p!r} outside {lb}, {upper!r}) for c = {c!r}")


def sharp_constant(c: float, p: float) -> float:
    """``K(c, p) = 1 / (c^(p-1) (c + p - c p))``."""
    c, p = float(c), float(p)
    _check_p(c, p)
    return 1.0 / (c ** (p - 1.0) * (c + p - c * p))


def verify_rhi(
    w,
    p: float,
    intervals: Sequence[Interval] | None = None,
    c: float | None = None,
) -> list[RhiReport]:
    """Evaluate the reverse Hoelder inequality on each interval.

    ``c`` defaults to the exact A1 constant of ``w``; any larger value is
    also valid.  ``intervals`` defaults to the dyadic family of depth 4.
    """
    p = float(p)
    if c is None:
        c = a1_constant_exact(w).constant
    c = float(c)
    _check_p(c, p)
    if intervals is None:
        intervals = dyadic_intervals(4)
    intervals = list(intervals)
    K = sharp_constant(c, p)
    if isinstance(w, PowerWeight):
        ip = [integrate_p(w, I, p) for I in intervals]
        i1 = [integrate_p(w, I, 1.0) for I in intervals]
    else:
        lo = np.array([I.lo for I in intervals])
        hi = np.array([I.hi for I in intervals])
        ip = integrate_p_many(w, lo, hi, p)
        i1 = integrate_p_many(w, lo, hi, 1.0)
    out = []
    for I, a, b in zip(intervals, ip, i1):
        lhs = float(a) / I.length
        base = (float(b) / I.length) ** p
        out.append(RhiReport(I, p, c, lhs, base, K, K * base - lhs))
    return out


def h_function(y: float, p: float, t: float) -> float:
    """``h_y(t) = p y t^(p-1) - (p-1) t^p`` on ``t >= y > 0``; strictly decreasing in ``t``."""
    if not (y > 0 and p > 1 and t >= y):
        raise DomainError(f"need t >= y > 0 and p > 1, got y={y!r}, p={p!r}, t={t!r}")
    return p * y * t ** (p - 1.0) - (p - 1.0) * t**p


def _gap(phi, M, p, c):
    return p * phi * M ** (p - 1.0) - (p - 1.0) * M**p - phi**p * c ** (p - 1.0) * (c + p - c * p)


def pointwise_gap(w, p: float, c: float, x: float) -> float:
    """``p phi M^(p-1) - (p-1) M^p - phi^p c^(p-1) (c + p - c p)`` at ``x``.

    Nonnegative whenever ``phi <= M <= c phi`` at ``x``.  ``x`` must not be a
    breakpoint of a step weight (the weight has no value there).
    """
    _check_p(c, p)
    if isinstance(w, PowerWeight):
        phi = w(x)
        M = maximal_at(w, x).value
    else:
        if w.breakpoint_index(x) is not None:
            raise DomainError(f"x = {x!r} is a breakpoint; evaluate at a nearby interior point")
        phi = w(x)
        M = maximal_at(w, x).value
    return _gap(phi, M, p, c)


def pointwise_gaps(w: PiecewiseConstantWeight, p: float, c: float, xs) -> np.ndarray:
    """Vectorised :func:`pointwise_gap` for a step weight at interior points."""
    _check_p(c, p)
    xs = np.asarray(xs, dtype=float)
    if np.any(np.isin(xs, w.breakpoints)):
        raise DomainError("sample points must avoid breakpoints")
    return _gap(w(xs), maximal_values(w, xs), p, c)


def integral_inequality_check(w, p: float, tol: float = 1e-8) -> IntegralCheck:
    """``int_0^1 {p phi M^(p-1) - (p-1) M^p} <= f^p`` by adaptive quadrature.

    Panels follow :func:`~a1lab.maximal.quadrature_edges`.  Passes when the
    quadrature value is at most ``f^p + tol * max(1, f^p)``: near the
    critical exponent ``f^p`` can exceed ``1e13``, where an absolute ``tol``
    is finer than the float spacing.
    """
    p = float(p)
    c = a1_constant_exact(w).constant
    _check_p(c, p, allow_one=False)
    f_p = w.total_mass**p

    def integrand_power(t):
        phi = t**w.exponent
        M = w.c * phi
        return p * phi * M ** (p - 1.0) - (p - 1.0) * M**p

    def integrand_step(t):
        phi = w(t)
        M = M_step(t)
        return p * phi * M ** (p - 1.0) - (p - 1.0) * M**p

    if isinstance(w, PowerWeight):
        lhs, _ = integrate.quad(integrand_power, 0.0, 1.0, epsabs=0, epsrel=tol, limit=200)
    else:
        M_step = maximal_function(w)
        x = quadrature_edges(w)
        lhs = math.fsum(
            integrate.quad(integrand_step, a, b, epsabs=tol * 1e-3, epsrel=tol, limit=200)[0]
            for a, b in zip(x[:-1], x[1:])
        )
    return IntegralCheck(lhs, f_p, lhs <= f_p + tol * max(1.0, f_p))


def sharpness_sweep(c: float, p_count: int) -> list[SharpnessRow]:
    """Ratio ``int phi^p / (int phi)^p`` of the power weight against ``K(c, p)``.

    ``p`` runs over ``p_count`` evenly spaced values in ``[1, 0.999 c/(c-1)]``.
    """
    if p_count < 1:
        raise DomainError("p_count must be >= 1")
    w = PowerWeight(c)
    ps = np.linspace(1.0, 0.999 * w.critical_p, p_count) if p_count > 1 else np.array([1.0])
    rows = []
    mean = integrate_p(w, UNIT, 1.0)
    for p in ps:
        p = float(p)
        rows.append(SharpnessRow(p, integrate_p(w, UNIT, p) / mean**p, sharp_constant(w.c, p)))
    return rows


def rhi_p_grid(c: float) -> list[float]:
    """``{1, midpoint of [1, c/(c-1)], 0.95 c/(c-1)}``.

    For ``c > 20`` the last value would fall below 1 and is replaced by
    ``1 + 0.95 (c/(c-1) - 1)``.  For ``c == 1`` the grid is ``{1, 2, 4}``.
    """
    if c == 1:
        return [1.0, 2.0, 4.0]
    q = critical_exponent(c)
    near = 0.95 * q
    if near < 1.0:
        near = 1.0 + 0.95 * (q - 1.0)
    return [1.0, 0.5 * (1.0 + q), near]


def verify_all(w, intervals: Iterable[Interval] | None = None) -> list[RhiReport]:
    """:func:`verify_rhi` at every exponent of :func:`rhi_p_grid` with the exact constant."""
    c = a1_constant_exact(w).constant
    ivs = list(intervals) if intervals is not None else dyadic_intervals(4)
    out = []
    for p in rhi_p_grid(c):
        out.extend(verify_rhi(w, p, ivs, c))
    return out
