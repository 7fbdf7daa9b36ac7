"""Exact representations of weights on the unit interval.

Two families are supported:

* :class:`PiecewiseConstantWeight`, a positive step function given by its
  breakpoints and piece values.  Every quantity (prefix integrals, moments,
  interval averages) reduces to a finite sum over pieces, so nothing here
  uses quadrature.
* :class:`PowerWeight`, ``phi(t) = t**(-1 + 1/c)``, the extremal family for
  the reverse Hoelder inequality, with closed-form integrals.

Both are immutable.  The JSON interchange format is::

    {"type": "piecewise", "breakpoints": [0, ..., 1], "values": [...]}
    {"type": "power", "c": 2.0}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError, NonIntegrableError


@dataclass(frozen=True)
class Interval:
    """Open subinterval ``(lo, hi)`` of ``(0, 1)``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (0.0 <= lo < hi <= 1.0):
            raise DomainError(f"need 0 <= lo < hi <= 1, got ({lo!r}, {hi!r})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo < x < self.hi


UNIT = Interval(0.0, 1.0)


def dyadic_intervals(depth: int) -> list[Interval]:
    """All dyadic subintervals ``(j/2^d, (j+1)/2^d)`` for ``d = 0..depth``."""
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    out = []
    for d in range(depth + 1):
        n = 2**d
        out.extend(Interval(j / n, (j + 1) / n) for j in range(n))
    return out


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PiecewiseConstantWeight:
    """Positive step function on ``(0, 1)``.

    ``values[i]`` is the weight on ``(breakpoints[i], breakpoints[i+1])``.
    At a breakpoint the value of the piece to the right is used.
    """

    breakpoints: np.ndarray
    values: np.ndarray
    prefix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        x = np.asarray(self.breakpoints, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.ndim != 1 or v.ndim != 1:
            raise DomainError("breakpoints and values must be one-dimensional")
        if len(v) < 1 or len(x) != len(v) + 1:
            raise DomainError(
                f"need k >= 1 values and k + 1 breakpoints, got {len(v)} and {len(x)}"
            )
        if x[0] != 0.0 or x[-1] != 1.0:
            raise DomainError("breakpoints must start at 0 and end at 1")
        if not np.all(np.diff(x) > 0):
            raise DomainError("breakpoints must be strictly increasing")
        if not (np.all(np.isfinite(v)) and np.all(v > 0)):
            raise DomainError("values must be finite and strictly positive")
        # P(x_j) accumulated left to right; every chord slope is taken from this array.
        prefix = np.concatenate(([0.0], np.cumsum(v * np.diff(x))))
        object.__setattr__(self, "breakpoints", _readonly(x))
        object.__setattr__(self, "values", _readonly(v))
        object.__setattr__(self, "prefix", _readonly(prefix))

    def __eq__(self, other):
        if not isinstance(other, PiecewiseConstantWeight):
            return NotImplemented
        return np.array_equal(self.breakpoints, other.breakpoints) and np.array_equal(
            self.values, other.values
        )

    __hash__ = None

    @property
    def k(self) -> int:
        """Number of pieces."""
        return len(self.values)

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    @property
    def total_mass(self) -> float:
        return float(self.prefix[-1])

    def piece_index(self, x: float) -> int:
        """Index of the piece containing ``x`` (right-continuous; ``x = 1`` maps to the last piece)."""
        i = int(np.searchsorted(self.breakpoints, x, side="right")) - 1
        return min(max(i, 0), self.k - 1)

    def breakpoint_index(self, x: float) -> int | None:
        j = int(np.searchsorted(self.breakpoints, x))
        if j < len(self.breakpoints) and self.breakpoints[j] == x:
            return j
        return None

    def __call__(self, x):
        """Evaluate the weight (right-continuous convention)."""
        x = np.asarray(x, dtype=float)
        idx = np.clip(np.searchsorted(self.breakpoints, x, side="right") - 1, 0, self.k - 1)
        out = self.values[idx]
        return float(out) if out.ndim == 0 else out

    def scaled(self, s: float) -> "PiecewiseConstantWeight":
        if not s > 0:
            raise DomainError("scale factor must be positive")
        return PiecewiseConstantWeight(self.breakpoints, s * self.values)

    def restrict(self, interval: Interval) -> "PiecewiseConstantWeight":
        """Restriction to ``interval``, mapped affinely onto ``(0, 1)``.

        Averages over subintervals are invariant under the affine change of
        variable, so the A1 constant of the result is the A1 constant of the
        weight on ``interval``.
        """
        lo, hi = interval.lo, interval.hi
        x = self.breakpoints
        inner = x[(x > lo) & (x < hi)]
        t = (inner - lo) / (hi - lo)
        pts = [0.0]
        for ti in t:
            if 0.0 < ti < 1.0 and ti > pts[-1]:
                pts.append(float(ti))
        pts.append(1.0)
        pts = np.array(pts)
        mids = lo + (hi - lo) * 0.5 * (pts[:-1] + pts[1:])
        return PiecewiseConstantWeight(pts, self(mids))

    def to_dict(self) -> dict:
        return {
            "type": "piecewise",
            "breakpoints": [float(b) for b in self.breakpoints],
            "values": [float(v) for v in self.values],
        }

    @classmethod
    def constant(cls, value: float = 1.0) -> "PiecewiseConstantWeight":
        return cls([0.0, 1.0], [value])


@dataclass(frozen=True)
class PowerWeight:
    """The extremal weight ``phi(t) = t**(-1 + 1/c)`` with ``c > 1``.

    Its A1 constant is exactly ``c``, its mean over ``(0, 1)`` is ``c`` and
    ``(1/t) * int_0^t phi = c * phi(t)`` for every ``t``.
    """

    c: float

    def __post_init__(self):
        c = float(self.c)
        if not (c > 1 and math.isfinite(c)):
            raise DomainError(f"power weight needs finite c > 1, got {c!r}")
        object.__setattr__(self, "c", c)

    @property
    def exponent(self) -> float:
        return -1.0 + 1.0 / self.c

    @property
    def critical_p(self) -> float:
        """``c/(c-1)``: the first exponent at which ``phi**p`` stops being integrable."""
        return self.c / (self.c - 1.0)

    @property
    def total_mass(self) -> float:
        return self.c

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = x**self.exponent
        return float(out) if out.ndim == 0 else out

    def prefix_integral(self, x: float) -> float:
        """``int_0^x phi = c * x**(1/c)``."""
        if not 0.0 <= x <= 1.0:
            raise DomainError(f"x must lie in [0, 1], got {x!r}")
        return self.c * x ** (1.0 / self.c)

    def to_dict(self) -> dict:
        return {"type": "power", "c": self.c}


Weight = Union[PiecewiseConstantWeight, PowerWeight]


def prefix_integral(w: Weight, x: float) -> float:
    """``P(x) = int_0^x phi``; continuous, strictly increasing, ``P(0) = 0``."""
    if isinstance(w, PowerWeight):
        return w.prefix_integral(x)
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    if x == 1.0:
        return float(w.prefix[-1])
    i = w.piece_index(x)
    return float(w.prefix[i] + w.values[i] * (x - w.breakpoints[i]))


def integrate_p(w: Weight, interval: Interval = UNIT, p: float = 1.0) -> float:
    """Exact ``int_I phi**p``.

    For a power weight this requires ``p < c/(c-1)``; otherwise
    :class:`NonIntegrableError` is raised.
    """
    p = float(p)
    if not p >= 1.0:
        raise DomainError(f"p must be >= 1, got {p!r}")
    if isinstance(w, PowerWeight):
        s = 1.0 + w.exponent * p
        if not s > 0:
            raise NonIntegrableError(
                f"phi**p is not integrable for p = {p!r} >= c/(c-1) = {w.critical_p!r}"
            )
        return (interval.hi**s - interval.lo**s) / s
    if p == 1.0:
        return prefix_integral(w, interval.hi) - prefix_integral(w, interval.lo)
    x = w.breakpoints
    overlap = np.clip(np.minimum(x[1:], interval.hi) - np.maximum(x[:-1], interval.lo), 0.0, None)
    return float(np.sum(w.values**p * overlap))


def integrate_p_many(w: PiecewiseConstantWeight, lo, hi, p: float) -> np.ndarray:
    """Vectorised :func:`integrate_p` over many intervals of a step weight."""
    lo = np.asarray(lo, dtype=float)[:, None]
    hi = np.asarray(hi, dtype=float)[:, None]
    x = w.breakpoints
    if p == 1.0:
        return _prefix_many(w, hi[:, 0]) - _prefix_many(w, lo[:, 0])
    overlap = np.clip(np.minimum(x[1:], hi) - np.maximum(x[:-1], lo), 0.0, None)
    return (w.values**p * overlap).sum(axis=1)


def _prefix_many(w: PiecewiseConstantWeight, xs: np.ndarray) -> np.ndarray:
    idx = np.clip(np.searchsorted(w.breakpoints, xs, side="right") - 1, 0, w.k - 1)
    out = w.prefix[idx] + w.values[idx] * (xs - w.breakpoints[idx])
    return np.where(xs == 1.0, w.prefix[-1], out)


def random_weight(
    seed: int, max_pieces: int = 8, value_range: tuple[float, float] = (0.5, 8.0)
) -> PiecewiseConstantWeight:
    """Seeded random step weight.

    The number of pieces is uniform on ``1..max_pieces``, interior
    breakpoints are sorted uniform draws and values are log-uniform on
    ``value_range``.
    """
    lo, hi = value_range
    if max_pieces < 1:
        raise DomainError("max_pieces must be >= 1")
    if not (0 < lo < hi and math.isfinite(hi)):
        raise DomainError(f"value_range must satisfy 0 < lo < hi, got {value_range!r}")
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, max_pieces + 1))
    while True:
        inner = np.sort(rng.uniform(0.0, 1.0, size=k - 1))
        x = np.concatenate(([0.0], inner, [1.0]))
        if np.all(np.diff(x) > 0):
            break
    v = np.exp(rng.uniform(math.log(lo), math.log(hi), size=k))
    return PiecewiseConstantWeight(x, v)


def weight_from_dict(d: dict) -> Weight:
    kind = d.get("type")
    if kind == "piecewise":
        return PiecewiseConstantWeight(d["breakpoints"], d["values"])
    if kind == "power":
        return PowerWeight(d["c"])
    raise DomainError(f"unknown weight type {kind!r}")


def parse_weight(spec: str) -> Weight:
    """Parse a weight from JSON text or the shorthands ``power:c=<c>`` / ``pcw:<b0,...,bk>;<v1,...,vk>``."""
    spec = spec.strip()
    try:
        if spec.startswith("{"):
            return weight_from_dict(json.loads(spec))
        if spec.startswith("power:"):
            key, _, val = spec[len("power:"):].partition("=")
            if key.strip() != "c":
                raise DomainError(f"bad power shorthand {spec!r}")
            return PowerWeight(float(val))
        if spec.startswith("pcw:"):
            b, sep, v = spec[len("pcw:"):].partition(";")
            if not sep:
                raise DomainError(f"bad pcw shorthand {spec!r}")
            return PiecewiseConstantWeight(
                [float(t) for t in b.split(",")], [float(t) for t in v.split(",")]
            )
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot parse weight {spec!r}: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"cannot parse weight {spec!r}: {exc}") from exc
    raise DomainError(f"unrecognised weight spec {spec!r}")


def weight_to_json(w: Weight) -> str:
    """Canonical compact JSON for a weight."""
    return json.dumps(w.to_dict(), separators=(",", ":"))
