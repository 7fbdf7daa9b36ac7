"""Decreasing rearrangement of step weights and the averaged A1 check on it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .weights import PiecewiseConstantWeight, PowerWeight


class RearrangedWeight(PiecewiseConstantWeight):
    """A step weight whose values strictly decrease from left to right."""

    def __post_init__(self):
        super().__post_init__()
        if not np.all(np.diff(self.values) < 0):
            raise DomainError("rearranged weight must have strictly decreasing values")


@dataclass(frozen=True)
class StarCheck:
    worst_ratio: float
    worst_t: float
    c: float

    @property
    def holds(self) -> bool:
        return self.worst_ratio <= self.c * (1 + 1e-12)


def _exact_lengths(w: PiecewiseConstantWeight) -> list[Fraction]:
    x = [Fraction(float(t)) for t in w.breakpoints]
    return [b - a for a, b in zip(x[:-1], x[1:])]


def rearrange(w: PiecewiseConstantWeight) -> RearrangedWeight:
    """Decreasing right-continuous rearrangement ``phi*``.

    Pieces are sorted by value (descending) with lengths preserved; pieces of
    equal value are merged so equal rearrangements compare equal.  Each new
    breakpoint is the correctly rounded exact total length of the pieces
    above it, so the distribution function agrees with the source to the
    last bit.
    """
    lengths = _exact_lengths(w)
    groups: dict[float, Fraction] = {}
    for v, length in zip(w.values.tolist(), lengths):
        groups[v] = groups.get(v, Fraction(0)) + length
    x, kept, acc = [0.0], [], Fraction(0)
    for v in sorted(groups, reverse=True):
        acc += groups[v]
        end = float(acc)
        # a sliver shorter than the float spacing at its new position vanishes
        if end > x[-1]:
            x.append(end)
            kept.append(v)
    x[-1] = 1.0
    return RearrangedWeight(np.array(x), np.array(kept))


def distribution(w: PiecewiseConstantWeight, lam: float) -> float:
    """``|{phi > lam}|``, correctly rounded."""
    total = sum(
        (length for v, length in zip(w.values.tolist(), _exact_lengths(w)) if v > lam),
        Fraction(0),
    )
    return float(total)


def check_star_a1(w_star, c: float, samples: int = 1000) -> StarCheck:
    """Worst ratio of ``(1/t) int_0^t phi*`` to ``phi*(t)`` over ``t in (0, 1)``.

    On each piece of a decreasing step function the running average is
    nonincreasing while ``phi*`` is constant, so the worst ratio on the piece
    is at its left end (right-continuous value).  Only those points are
    evaluated.  For a :class:`PowerWeight` the ratio is evaluated on a grid
    of ``samples`` points and is ``c`` up to rounding.
    """
    if isinstance(w_star, PowerWeight):
        t = (np.arange(samples) + 0.5) / samples
        avg = w_star.c * t ** (1.0 / w_star.c) / t
        ratio = avg / w_star(t)
        i = int(np.argmax(ratio))
        return StarCheck(float(ratio[i]), float(t[i]), c)
    if not np.all(np.diff(w_star.values) <= 0):
        raise DomainError("check_star_a1 needs a decreasing weight; call rearrange first")
    x, P, v = w_star.breakpoints, w_star.prefix, w_star.values
    best, where = 1.0, 0.0
    for i in range(1, w_star.k):
        ratio = (P[i] / x[i]) / v[i]
        if ratio > best:
            best, where = float(ratio), float(x[i])
    return StarCheck(best, where, c)
