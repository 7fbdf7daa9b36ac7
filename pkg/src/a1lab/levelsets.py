"""Exact level sets ``E_lam = {M phi > lam}`` and the layer-cake identity.

On a piece ``(lo, hi)`` with value ``v`` the prefix integral is linear, so
each candidate average from :mod:`a1lab.maximal` exceeds ``lam`` on a
subinterval of the piece obtained by solving one linear equation.  With
``A`` the average over ``(a, lo)``, the chord from a breakpoint ``a < lo``
to ``x`` exceeds ``lam`` iff

    (v - lam)(x - lo) > (lo - a)(lam - A),

and symmetrically for chords from ``x`` to a breakpoint ``b > hi``.

When ``v > lam`` the whole piece lies in ``E_lam`` (the chord from ``lo`` is
``v``).  When ``v < lam`` every nonempty solution set is a prefix
``(lo, r)`` (left chords) or a suffix ``(l, hi)`` (right chords), so
``E_lam`` restricted to the piece is ``(lo, max r) U (min l, hi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, ParameterRangeError, PreconditionError
from .maximal import a1_constant_exact, maximal_at_all_breakpoints_fast, maximal_function, quadrature_edges
from .weights import Interval, PiecewiseConstantWeight, PowerWeight, prefix_integral

REL_SLACK = 1e-12


@dataclass(frozen=True)
class LevelSetDecomposition:
    lam: float
    components: tuple[Interval, ...]
    measure: float
    mass: float


@dataclass(frozen=True)
class LevelBound:
    measure: float
    mass_over_lambda: float
    passed: bool


@dataclass(frozen=True)
class LayerCake:
    lhs: float
    rhs: float

    @property
    def diff(self) -> float:
        return abs(self.lhs - self.rhs)


class _LevelSolver:
    """Per-weight precomputation for repeated level-set queries.

    Candidate sets are decided by comparing ``lam`` with the chord averages
    ending at the piece's breakpoints, the same floats the maximal function
    uses, so ``E_lam`` is empty exactly when ``lam >= sup M phi``.
    """

    def __init__(self, w: PiecewiseConstantWeight):
        self.w = w
        x, P, v = w.breakpoints, w.prefix, w.values
        k = w.k
        self.lo, self.hi, self.v = x[:-1], x[1:], v
        j = np.arange(k + 1)[None, :]
        i = np.arange(k)[:, None]
        # left anchors a < i end at lo = x[i]; right anchors b > i + 1 start at hi = x[i + 1]
        self.left_len = np.where(j < i, x[i] - x[None, :], np.nan)
        self.right_len = np.where(j > i + 1, x[None, :] - x[i + 1], np.nan)
        with np.errstate(divide="ignore", invalid="ignore"):
            left_avg = np.where(j < i, (P[i] - P[None, :]) / self.left_len, -np.inf)
            right_avg = np.where(j > i + 1, (P[None, :] - P[i + 1]) / self.right_len, -np.inf)
        # adjacent chords are piece values
        rows = np.arange(k)
        left_avg[rows[1:], rows[1:] - 1] = v[:-1]
        right_avg[rows[:-1], rows[:-1] + 2] = v[1:]
        self.left_avg, self.right_avg = left_avg, right_avg
        limits = maximal_at_all_breakpoints_fast(w)
        self.at_breaks = np.array([b.left for b in limits])
        self.sup = float(self.at_breaks.max())

    def pieces(self, lam: float):
        """Per piece ``(R, L)`` with ``E`` on the piece ``= (lo, R) U (L, hi)``; ``R == hi`` means the whole piece."""
        lo, hi, v = self.lo, self.hi, self.v
        left_hit = self.left_avg > lam
        right_hit = self.right_avg > lam
        whole = (v > lam) | ((v == lam) & (left_hit.any(axis=1) | right_hit.any(axis=1)))
        below = v < lam
        with np.errstate(divide="ignore", invalid="ignore"):
            gap = (lam - v)[:, None]
            # chord from a through x stays above lam until x = lo + (lo - a)(avg - lam)/(lam - v)
            r = np.where(left_hit, lo[:, None] + self.left_len * (self.left_avg - lam) / gap, -np.inf)
            l = np.where(right_hit, hi[:, None] - self.right_len * (self.right_avg - lam) / gap, np.inf)
        R = np.where(below, np.minimum(r.max(axis=1), hi), lo)
        R = np.maximum(R, lo)
        L = np.where(below, np.maximum(l.min(axis=1), lo), hi)
        L = np.minimum(L, hi)
        R = np.where(whole | (R > L), hi, R)
        L = np.where(whole | (R >= hi), lo, L)
        return R, L

    def measure(self, lam: float) -> float:
        R, L = self.pieces(lam)
        return math.fsum(np.where(R >= self.hi, self.hi - self.lo, (R - self.lo) + (self.hi - L)))

    def components(self, lam: float) -> list[tuple[float, float]]:
        R, L = self.pieces(lam)
        parts: list[list[float]] = []
        for i in range(self.w.k):
            lo, hi = float(self.lo[i]), float(self.hi[i])
            if R[i] >= hi:
                segs = [(lo, hi)]
            else:
                segs = []
                if R[i] > lo:
                    segs.append((lo, float(R[i])))
                if L[i] < hi:
                    segs.append((float(L[i]), hi))
            for a, b in segs:
                # glue across the shared breakpoint only when that point is itself in E
                if parts and parts[-1][1] == a and a == lo and self.at_breaks[i] > lam:
                    parts[-1][1] = b
                else:
                    parts.append([a, b])
        return [(a, b) for a, b in parts]


def level_set(w, lam: float) -> LevelSetDecomposition:
    """Exact decomposition of ``{M phi > lam}`` into disjoint open intervals.

    For ``lam`` below the mean ``f`` the set is all of ``(0, 1)``.
    """
    lam = float(lam)
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    if isinstance(w, PowerWeight):
        return _level_set_power(w, lam)
    f = w.total_mass
    if lam < f:
        comps = [(0.0, 1.0)]
    else:
        comps = _LevelSolver(w).components(lam)
    intervals = tuple(Interval(a, b) for a, b in comps)
    measure = math.fsum(b - a for a, b in comps)
    mass = math.fsum(prefix_integral(w, b) - prefix_integral(w, a) for a, b in comps)
    return LevelSetDecomposition(lam, intervals, measure, mass)


def _level_set_power(w: PowerWeight, lam: float) -> LevelSetDecomposition:
    # c t^e > lam  <=>  t < (lam/c)^(1/e)
    end = 1.0 if lam < w.c else min(1.0, (lam / w.c) ** (1.0 / w.exponent))
    if end <= 0.0:
        return LevelSetDecomposition(lam, (), 0.0, 0.0)
    return LevelSetDecomposition(lam, (Interval(0.0, end),), end, w.prefix_integral(end))


def check_level_bound(w, lam: float) -> LevelBound:
    """``|E_lam| >= (1/lam) int_{E_lam} phi`` for ``lam >= f``."""
    lam = float(lam)
    if lam < w.total_mass:
        raise PreconditionError(f"lambda = {lam!r} is below the mean f = {w.total_mass!r}")
    ls = level_set(w, lam)
    rhs = ls.mass / lam
    return LevelBound(ls.measure, rhs, ls.measure >= rhs - REL_SLACK * max(abs(rhs), 1e-300))


def component_averages(ls: LevelSetDecomposition, w) -> list[float]:
    """Average of ``phi`` over each component of a level set."""
    return [
        (prefix_integral(w, I.hi) - prefix_integral(w, I.lo)) / I.length for I in ls.components
    ]


def _quad_segments(func, edges, tol):
    total = []
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 1e-12 * max(abs(b), 1.0):
            # panels a few ulps wide: adaptive quadrature cannot subdivide them
            total.append((b - a) * func(0.5 * (a + b)))
        else:
            val, _ = integrate.quad(func, a, b, epsabs=tol * 1e-3, epsrel=tol, limit=200)
            total.append(val)
    return math.fsum(total)


def _lambda_breaks(w: PiecewiseConstantWeight, solver: _LevelSolver, top: float) -> np.ndarray:
    x, P = w.breakpoints, w.prefix
    i, j = np.triu_indices(len(x), k=1)
    chords = (P[j] - P[i]) / (x[j] - x[i])
    pts = np.concatenate(([0.0, w.total_mass, solver.sup, top], chords, w.values, solver.at_breaks))
    return np.unique(pts[(pts >= 0) & (pts <= top)])


def layer_cake_check(w, p: float, tol: float = 1e-8) -> LayerCake:
    """Compare ``int_0^1 (M phi)^p`` with ``int_0^inf p lam^(p-1) |E_lam| d lam``.

    The two sides come from independent routes: the left integrates the
    pointwise maximal function over panels split at the breakpoints and at
    the chord length scales (:func:`~a1lab.maximal.quadrature_edges`), the
    right integrates exact level-set measures over panels split at every
    chord slope (where ``|E_lam|`` can change form) and truncated at
    ``[phi]_A1 * max phi``.
    """
    p = float(p)
    c = a1_constant_exact(w).constant
    upper = c / (c - 1.0) if c > 1 else math.inf
    if not (1.0 < p < upper):
        raise ParameterRangeError(f"p must lie in (1, {upper!r}), got {p!r}")
    if isinstance(w, PowerWeight):
        lhs, _ = integrate.quad(lambda t: (w.c * t**w.exponent) ** p, 0.0, 1.0, epsabs=0, epsrel=tol, limit=200)
        rhs_tail, _ = integrate.quad(
            lambda s: p * s ** (p - 1) * _level_set_power(w, s).measure, w.c, math.inf, epsabs=0, epsrel=tol, limit=200
        )
        rhs = _quad_segments(lambda s: p * s ** (p - 1), [0.0, w.c], tol) + rhs_tail
        return LayerCake(lhs, rhs)
    M = maximal_function(w)
    lhs = _quad_segments(lambda t: M(t) ** p, list(quadrature_edges(w)), tol)
    solver = _LevelSolver(w)
    top = c * float(w.values.max())
    edges = _lambda_breaks(w, solver, top)
    rhs = _quad_segments(lambda s: p * s ** (p - 1) * solver.measure(s), list(edges), tol)
    return LayerCake(lhs, rhs)
