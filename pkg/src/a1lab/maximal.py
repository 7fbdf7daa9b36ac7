"""Exact uncentered maximal function and A1 constants for step weights.

For a step weight the prefix integral ``P`` is piecewise linear, and the
average over ``(a, b)`` is the slope of the chord of ``P`` between ``a`` and
``b``.  For fixed ``b`` the derivative of the average in ``a`` is
``(avg - phi(a)) / (b - a)``, whose sign is constant on each piece, so the
supremum over ``a`` sits at a breakpoint or in the shrinking limit.  Splitting
an interval at the query point never lowers the best of the two halves.
Together these give the finite candidate set used by :func:`maximal_at`:

    M phi(x) = max(phi(x), max_a (P(x) - P(a)) / (x - a), max_b (P(b) - P(x)) / (b - x))

with ``a``, ``b`` ranging over breakpoints.  A chord to a breakpoint that
bounds the piece of ``x`` is just a piece value, so those are taken from
``values`` rather than recomputed with rounding.  In particular ``M phi`` is
continuous and its two one-sided limits at a breakpoint coincide.

The same monotonicity makes every candidate monotone in ``x`` inside a
piece, so the supremum of ``M phi / phi`` over a piece is one of its two
endpoint limits.  :func:`a1_constant_exact` uses that.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import DomainError
from .weights import Interval, PiecewiseConstantWeight, PowerWeight, prefix_integral

Side = Literal["interior", "left-limit", "right-limit"]
SHRINKING = "shrinking"


@dataclass(frozen=True)
class MaximalValue:
    value: float
    witness: Union[Interval, str]


@dataclass(frozen=True)
class A1Result:
    constant: float
    argmax_breakpoint: float
    side: Literal["left-limit", "right-limit"]


@dataclass(frozen=True)
class BreakpointMaximal:
    x: float
    left: float
    right: float


def _chord(P, x, i, j) -> float:
    # Single source of chord slopes, shared by the brute-force and hull paths.
    return (P[j] - P[i]) / (x[j] - x[i])


def maximal_at(w: PiecewiseConstantWeight, x: float, side: Side = "interior") -> MaximalValue:
    """Exact ``M phi(x)`` with a witnessing interval.

    At a breakpoint, ``side`` chooses the one-sided limit (``"interior"``
    falls back to the right-continuous convention).  ``M phi`` is continuous
    for step weights, so both limits carry the same value; only the witness
    differs.  The witness is the maximising interval, or ``"shrinking"`` when
    the local value wins.  Ties go to the local value, then to the leftmost
    candidate.

    Chords to the breakpoints adjacent to ``x`` equal a piece value exactly,
    so those piece values are used instead of rounded chord slopes.
    """
    if isinstance(w, PowerWeight):
        return maximal_at_power(w, x)
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0, 1), got {x!r}")
    if side not in ("interior", "left-limit", "right-limit"):
        raise DomainError(f"unknown side {side!r}")
    bx, v = w.breakpoints, w.values
    j = w.breakpoint_index(x)
    if j is not None:
        Px = w.prefix[j]
        n_left, n_right = j - 1, j + 2
        own, other = (j - 1, j) if side == "left-limit" else (j, j - 1)
        best, witness = float(v[own]), SHRINKING
        if v[other] > best:
            best, witness = float(v[other]), Interval(bx[other], bx[other + 1])
    else:
        i = w.piece_index(x)
        Px = prefix_integral(w, x)
        n_left, n_right = i, i + 2
        best, witness = float(v[i]), SHRINKING
    left = (Px - w.prefix[:n_left]) / (x - bx[:n_left])
    right = (w.prefix[n_right:] - Px) / (bx[n_right:] - x)
    if left.size:
        a = int(np.argmax(left))
        if left[a] > best:
            best, witness = float(left[a]), Interval(bx[a], x)
    if right.size:
        b = int(np.argmax(right))
        if right[b] > best:
            best, witness = float(right[b]), Interval(x, bx[n_right + b])
    return MaximalValue(best, witness)


def maximal_values(w: PiecewiseConstantWeight, xs) -> np.ndarray:
    """Vectorised ``M phi`` at points of ``(0, 1)``; values agree with :func:`maximal_at`."""
    xs = np.asarray(xs, dtype=float)
    if np.any((xs <= 0) | (xs >= 1)):
        raise DomainError("all points must lie in (0, 1)")
    bx, P, v = w.breakpoints, w.prefix, w.values
    idx = np.clip(np.searchsorted(bx, xs, side="right") - 1, 0, w.k - 1)
    at_break = bx[idx] == xs
    local = np.where(at_break, np.maximum(v[idx], v[np.maximum(idx - 1, 0)]), v[idx])
    Px = P[idx] + v[idx] * (xs - bx[idx])
    n_left = np.where(at_break, idx - 1, idx)
    cols = np.arange(len(bx))[None, :]
    dx = xs[:, None] - bx[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        chords = np.where(cols < n_left[:, None], (Px[:, None] - P[None, :]) / dx, -np.inf)
        chords = np.maximum(chords, np.where(cols >= idx[:, None] + 2, (P[None, :] - Px[:, None]) / -dx, -np.inf))
    return np.maximum(local, chords.max(axis=1))


def maximal_function(w: PiecewiseConstantWeight):
    """Scalar ``t -> M phi(t)`` for quadrature integrands.

    Same floating-point operations as :func:`maximal_values` at points off
    the breakpoints, without the per-call numpy overhead.
    """
    bx = [float(t) for t in w.breakpoints]
    P = [float(t) for t in w.prefix]
    v = [float(t) for t in w.values]
    k, n = w.k, len(bx)

    def M(t: float) -> float:
        i = min(bisect.bisect_right(bx, t) - 1, k - 1)
        if t == bx[i] or not 0.0 < t < 1.0:
            return float(maximal_values(w, [t])[0])
        Pt = P[i] + v[i] * (t - bx[i])
        best = v[i]
        for a in range(i):
            c = (Pt - P[a]) / (t - bx[a])
            if c > best:
                best = c
        for b in range(i + 2, n):
            c = (P[b] - Pt) / -(t - bx[b])
            if c > best:
                best = c
        return best

    return M


def quadrature_edges(w: PiecewiseConstantWeight, factors=(1.0, 8.0)) -> np.ndarray:
    """Panel edges that resolve the structure of ``M phi`` inside each piece.

    On a piece ``(lo, hi)`` the chord to a breakpoint ``b > hi`` is a
    Moebius function of ``hi - x`` with scale ``b - hi``, so it can turn
    sharply within that distance of ``hi``.  Adaptive rules on the whole
    piece may never sample such a feature.  Edges are placed at
    ``hi - f (b - hi)`` and ``lo + f (lo - a)`` for each factor ``f``, in
    addition to the breakpoints.
    """
    x = w.breakpoints
    lo, hi = x[:-1, None], x[1:, None]
    d = np.abs(x[None, :] - x[:, None])
    pts = [x]
    for f in factors:
        pts.append((lo + f * d[:-1, :]).ravel())
        pts.append((hi - f * d[1:, :]).ravel())
    pts = np.concatenate(pts)
    return np.unique(pts[(pts >= 0.0) & (pts <= 1.0)])


def maximal_at_power(w: PowerWeight, x: float) -> MaximalValue:
    """``M phi(x) = c * phi(x)``, attained by left-anchored intervals ``(0, x)``."""
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0, 1), got {x!r}")
    return MaximalValue(w.c * x**w.exponent, Interval(0.0, x))


def maximal_at_all_breakpoints_brute(w: PiecewiseConstantWeight) -> list[BreakpointMaximal]:
    """``O(k^2)`` reference: one-sided limits of ``M phi`` at every breakpoint.

    At 0 and 1 only one side exists; both fields then carry that limit.
    """
    out = []
    bx = w.breakpoints
    for j, xj in enumerate(bx):
        if j == 0 or j == w.k:
            lim = _endpoint_limit_brute(w, j)
            out.append(BreakpointMaximal(float(xj), lim, lim))
        else:
            out.append(
                BreakpointMaximal(
                    float(xj),
                    maximal_at(w, xj, "left-limit").value,
                    maximal_at(w, xj, "right-limit").value,
                )
            )
    return out


def _endpoint_limit_brute(w: PiecewiseConstantWeight, j: int) -> float:
    bx, P = w.breakpoints, w.prefix
    if j == 0:
        chords = (P[2:] - P[0]) / (bx[2:] - bx[0])
        local = w.values[0]
    else:
        chords = (P[j] - P[: j - 1]) / (bx[j] - bx[: j - 1])
        local = w.values[-1]
    return float(max(local, chords.max(initial=-np.inf)))


def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _hull_sweep(hx, hy, slope, stats=None):
    """For each j, the largest ``slope(i, j)`` over ``i < j - 1``.

    ``(hx, hy)`` are the points in sweep order; the candidates that can win
    are the vertices of the lower convex hull of the earlier points.  Along
    that hull the slope to the query point is unimodal, so a binary search
    finds the tangent vertex.  ``slope`` is evaluated on the caller's
    original arrays so results are bit-identical to brute force.  Returns
    ``-inf`` for ``j < 2``.
    """
    n = len(hx)
    out = [-math.inf] * n
    hull: list[int] = []
    work = 0
    for j in range(n):
        if j >= 2:
            # the neighbour j-1 is excluded: its chord is a piece value, handled exactly by the caller
            q = j - 2
            while len(hull) >= 2:
                a, b = hull[-2], hull[-1]
                work += 1
                if _cross(hx[a], hy[a], hx[b], hy[b], hx[q], hy[q]) <= 0:
                    hull.pop()
                else:
                    break
            hull.append(q)
        m = len(hull)
        if m:
            lo, hi = 0, m - 1
            while lo < hi:
                mid = (lo + hi) // 2
                work += 2
                if slope(hull[mid + 1], j) > slope(hull[mid], j):
                    lo = mid + 1
                else:
                    hi = mid
            best = slope(hull[lo], j)
            work += 1
            # float noise can break unimodality next to nearly collinear vertices
            for t in (lo - 1, lo + 1):
                if 0 <= t < m:
                    work += 1
                    best = max(best, slope(hull[t], j))
            out[j] = best
    if stats is not None:
        stats["work"] = stats.get("work", 0) + work
    return out


def maximal_at_all_breakpoints_fast(
    w: PiecewiseConstantWeight, stats: dict | None = None
) -> list[BreakpointMaximal]:
    """One-sided limits of ``M phi`` at all breakpoints in ``O(k log k)``.

    Left suprema come from tangent queries against the lower hull of the
    earlier points ``(x_i, P(x_i))``.  Right suprema use the mirrored sweep
    ``t -> -t, P -> -P``, which preserves slopes and turns the upper hull of
    later points into a lower hull of earlier ones.  Values agree exactly
    with :func:`maximal_at_all_breakpoints_brute`.  If ``stats`` is given,
    ``stats["work"]`` accumulates the number of chord and orientation
    evaluations.
    """
    x = [float(t) for t in w.breakpoints]
    P = [float(t) for t in w.prefix]
    n = len(x)
    k = w.k
    left = _hull_sweep(x, P, lambda i, j: _chord(P, x, i, j), stats)
    right = _hull_sweep(
        [-t for t in reversed(x)],
        [-t for t in reversed(P)],
        lambda i, j: _chord(P, x, n - 1 - j, n - 1 - i),
        stats,
    )[::-1]
    vals = [float(v) for v in w.values]
    out = []
    for j in range(n):
        chord_best = max(left[j], right[j])
        if j == 0:
            lim = max(vals[0], chord_best)
            out.append(BreakpointMaximal(x[0], lim, lim))
        elif j == k:
            lim = max(vals[-1], chord_best)
            out.append(BreakpointMaximal(x[-1], lim, lim))
        else:
            lim = max(vals[j - 1], vals[j], chord_best)
            out.append(BreakpointMaximal(x[j], lim, lim))
    return out


def a1_constant_exact(w: Union[PiecewiseConstantWeight, PowerWeight]) -> A1Result:
    """Exact A1 constant: ``ess sup M phi / phi``.

    For a step weight this is the largest endpoint limit of ``M phi`` on a
    piece divided by the piece value.  Ties resolve to the leftmost
    location.  A power weight returns ``c`` (the ratio is ``c`` everywhere;
    the reported location is 0).
    """
    if isinstance(w, PowerWeight):
        return A1Result(w.c, 0.0, "right-limit")
    limits = maximal_at_all_breakpoints_fast(w)
    best, where, side = -math.inf, 0.0, "right-limit"
    for i, v in enumerate(w.values):
        v = float(v)
        r_start = limits[i].right / v
        r_end = limits[i + 1].left / v
        if r_start > best:
            best, where, side = r_start, limits[i].x, "right-limit"
        if r_end > best:
            best, where, side = r_end, limits[i + 1].x, "left-limit"
    return A1Result(best, where, side)


def _scan_grid(w: PiecewiseConstantWeight, mesh: float | None) -> np.ndarray:
    pts = w.breakpoints
    if mesh is not None:
        if not 0 < mesh < 1:
            raise DomainError(f"mesh must lie in (0, 1), got {mesh!r}")
        n = math.ceil(1.0 / mesh - 1e-9)
        # j/n keeps grids nested when n divides n'
        pts = np.union1d(pts, np.arange(n + 1) / n)
    return pts


def a1_constant_interval_scan(w: PiecewiseConstantWeight, mesh: float | None = None) -> float:
    """Lower bound on the A1 constant from a finite family of intervals.

    Scans every interval whose endpoints lie on the breakpoints together with
    the uniform grid ``j/n`` (``n = ceil(1/mesh)``; ``mesh=None`` keeps only
    the breakpoints).  The essential infimum over an interval is the smallest
    piece value it overlaps.
    """
    g = _scan_grid(w, mesh)
    Pg = np.array([prefix_integral(w, t) for t in g]) if len(g) < 64 else _prefix_grid(w, g)
    cell_vals = w(0.5 * (g[:-1] + g[1:]))
    best = 1.0
    for a in range(len(g) - 1):
        avg = (Pg[a + 1:] - Pg[a]) / (g[a + 1:] - g[a])
        inf = np.minimum.accumulate(cell_vals[a:])
        best = max(best, float(np.max(avg / inf)))
    return best


def _prefix_grid(w, g):
    idx = np.clip(np.searchsorted(w.breakpoints, g, side="right") - 1, 0, w.k - 1)
    Pg = w.prefix[idx] + w.values[idx] * (g - w.breakpoints[idx])
    Pg[-1] = w.prefix[-1]
    return Pg
