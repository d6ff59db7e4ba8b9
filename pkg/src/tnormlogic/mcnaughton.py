"""One-variable Łukasiewicz term functions as exact piecewise-linear maps.

A basic literal's term function on ``[0, 1]`` is built by composing clamped
affine maps: a ``Mult(n)`` step is ``y -> min(1, n*y)`` and a ``Pow(n)`` step
is ``y -> max(0, n*y - (n - 1))``. :class:`PWLFunction` keeps the exact
breakpoints so zero sets can be read off directly.

Two constructions live here:

* :func:`threshold_literal` builds a nondecreasing literal whose zero set is
  exactly ``[0, h/k]``.
* :func:`separate_points` builds a one-variable formula that is 0 at one
  rational point and positive at another, by repeated doubling.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .formula import BasicLiteral, Formula, Mult, Pow, Step, expand_basic_literal, neg

__all__ = [
    "PWLFunction", "ZeroSet", "NotMonotoneError",
    "literal_to_pwl", "pwl_zero_set", "threshold_literal",
    "Separator", "separating_literal", "separate_points", "step_bound",
]

HALF = Fraction(1, 2)


class NotMonotoneError(ValueError):
    pass


@dataclass(frozen=True)
class PWLFunction:
    """Continuous piecewise-linear ``[0,1] -> [0,1]`` given by its breakpoints.

    Collinear interior breakpoints are dropped on construction, so two equal
    functions always have equal breakpoint tuples.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        pts = [(Fraction(x), Fraction(y)) for x, y in self.breakpoints]
        if len(pts) < 2 or pts[0][0] != 0 or pts[-1][0] != 1:
            raise ValueError("breakpoints must start at x=0 and end at x=1")
        if any(x1 >= x2 for (x1, _), (x2, _) in zip(pts, pts[1:])):
            raise ValueError("breakpoint abscissae must increase strictly")
        if any(not 0 <= y <= 1 for _, y in pts):
            raise ValueError("values must lie in [0, 1]")
        canon = [pts[0]]
        for p in pts[1:]:
            if len(canon) >= 2 and _slope(canon[-2], canon[-1]) == _slope(canon[-1], p):
                canon[-1] = p
            else:
                canon.append(p)
        object.__setattr__(self, "breakpoints", tuple(canon))

    @classmethod
    def identity(cls) -> "PWLFunction":
        return cls(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))))

    def __call__(self, x: Fraction | int | str) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError(f"{x} is outside [0, 1]")
        pts = self.breakpoints
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if x1 <= x <= x2:
                return y1 + (y2 - y1) * (x - x1) / (x2 - x1)
        raise AssertionError("unreachable")

    def is_nondecreasing(self) -> bool:
        return all(y1 <= y2 for (_, y1), (_, y2) in zip(self.breakpoints, self.breakpoints[1:]))

    def then_clamped(self, slope: Fraction | int, offset: Fraction | int) -> "PWLFunction":
        """Compose with ``y -> min(1, max(0, slope*y + offset))``."""
        slope, offset = Fraction(slope), Fraction(offset)
        levels = [] if slope == 0 else [(0 - offset) / slope, (1 - offset) / slope]
        pts: list[tuple[Fraction, Fraction]] = [self.breakpoints[0]]
        for (x1, y1), (x2, y2) in zip(self.breakpoints, self.breakpoints[1:]):
            lo, hi = min(y1, y2), max(y1, y2)
            crossings = sorted(
                x1 + (t - y1) * (x2 - x1) / (y2 - y1) for t in levels if lo < t < hi
            )
            pts.extend((x, None) for x in crossings)
            pts.append((x2, y2))
        out = []
        for x, y in pts:
            if y is None:
                y = self(x)
            out.append((x, min(Fraction(1), max(Fraction(0), slope * y + offset))))
        return PWLFunction(tuple(out))

    def then_step(self, step: Step) -> "PWLFunction":
        if isinstance(step, Mult):
            return self.then_clamped(step.n, 0)
        return self.then_clamped(step.n, 1 - step.n)

    def negated(self) -> "PWLFunction":
        return self.then_clamped(-1, 1)

    def to_json(self) -> str:
        return json.dumps([[x.numerator, x.denominator, y.numerator, y.denominator]
                           for x, y in self.breakpoints])

    @classmethod
    def from_json(cls, text: str) -> "PWLFunction":
        return cls(tuple((Fraction(a, b), Fraction(c, d)) for a, b, c, d in json.loads(text)))


def _slope(p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction]) -> Fraction:
    return (q[1] - p[1]) / (q[0] - p[0])


def literal_to_pwl(lit: BasicLiteral) -> PWLFunction:
    f = PWLFunction.identity()
    for step in lit.steps:
        f = f.then_step(step)
    return f


@dataclass(frozen=True)
class ZeroSet:
    """Zero set of a nondecreasing function: empty, ``{0}``, or ``[0, upper]``."""

    upper: Fraction | None

    @property
    def kind(self) -> str:
        if self.upper is None:
            return "empty"
        return "point" if self.upper == 0 else "interval"

    def __contains__(self, x: Fraction) -> bool:
        return self.upper is not None and 0 <= x <= self.upper


def pwl_zero_set(f: PWLFunction) -> ZeroSet:
    if not f.is_nondecreasing():
        raise NotMonotoneError("zero sets are only read off nondecreasing functions")
    zeros = [x for x, y in f.breakpoints if y == 0]
    return ZeroSet(zeros[-1] if zeros else None)


def threshold_literal(h: int, k: int) -> BasicLiteral:
    """Nondecreasing literal in ``X1`` whose zero set is exactly ``[0, h/k]``.

    Working on the target instead of the function: a leading ``Mult(n)`` turns
    the required threshold ``t`` into ``n*t`` and a leading ``Pow(n)`` turns it
    into ``n*t - (n-1)``. Writing ``t = h/k``, these multiply ``h`` or ``k - h``
    by ``n``. Taking ``n`` as large as possible strictly decreases the smaller
    of the two, Euclid style, until ``k - h == 1`` and a final ``Pow(k)``
    reaches threshold 0 (the identity's zero set ``{0}``).
    """
    t = Fraction(h, k)
    if not 0 < t < 1:
        raise ValueError(f"threshold {h}/{k} must lie strictly between 0 and 1")
    steps: list[Step] = []
    while True:
        num, den = t.numerator, t.denominator
        if den - num == 1:
            steps.append(Pow(den))
            break
        if 2 * num < den:
            n = (den - 1) // num
            steps.append(Mult(n))
            t = n * t
        else:
            n = (den - 1) // (den - num)
            steps.append(Pow(n))
            t = n * t - (n - 1)
    lit = BasicLiteral(1, tuple(steps))
    zs = pwl_zero_set(literal_to_pwl(lit))
    if zs.upper != Fraction(h, k):
        raise AssertionError(f"threshold construction for {h}/{k} produced {zs}")
    return lit


@dataclass(frozen=True)
class Separator:
    """How :func:`separate_points` separated two points."""

    coordinate: int  # 1-based variable index
    literal: BasicLiteral  # canonical, same term function as the raw steps
    negated: bool
    raw_steps: int  # doubling steps before merging
    low: Fraction
    high: Fraction
    straddle_high: Fraction  # image of the upper coordinate when the loop stopped

    @property
    def formula(self) -> Formula:
        f = expand_basic_literal(self.literal)
        return neg(f) if self.negated else f

    def pwl(self) -> PWLFunction:
        f = literal_to_pwl(self.literal)
        return f.negated() if self.negated else f


def _to_zero(a: Fraction, b: Fraction) -> tuple[list[Step], Fraction]:
    """Doubling steps sending ``a`` to 0 and ``b`` above 0, for ``a < b``."""
    steps: list[Step] = []
    while not (a <= HALF < b):
        if b <= HALF:
            steps.append(Mult(2))
            a, b = 2 * a, 2 * b
        else:
            steps.append(Pow(2))
            a, b = 2 * a - 1, 2 * b - 1
    steps.append(Pow(2))
    return steps, b


def _to_one(a: Fraction, b: Fraction) -> tuple[list[Step], Fraction]:
    """Doubling steps sending ``b`` to 1 and ``a`` below 1, for ``a < b``."""
    steps: list[Step] = []
    while not (a < HALF <= b):
        if a >= HALF:
            steps.append(Pow(2))
            a, b = 2 * a - 1, 2 * b - 1
        else:
            steps.append(Mult(2))
            a, b = 2 * a, 2 * b
    steps.append(Mult(2))
    return steps, b


def separating_literal(p: Sequence, q: Sequence) -> Separator:
    p = tuple(Fraction(x) for x in p)
    q = tuple(Fraction(x) for x in q)
    if len(p) != len(q):
        raise ValueError("points must have the same dimension")
    if any(not 0 <= x <= 1 for x in p + q):
        raise ValueError("coordinates must lie in [0, 1]")
    if p == q:
        raise ValueError("cannot separate a point from itself")
    up = [i for i in range(len(p)) if q[i] < p[i]]
    if up:
        i = up[0]
        a, b = q[i], p[i]
        steps, reached = _to_zero(a, b)
        negated = False
    else:
        i = next(j for j in range(len(p)) if p[j] < q[j])
        a, b = p[i], q[i]
        steps, reached = _to_one(a, b)
        negated = True
    lit = BasicLiteral(i + 1, tuple(steps))
    return Separator(i + 1, lit.canonical(), negated, len(steps), a, b, reached)


def separate_points(p: Sequence, q: Sequence) -> Formula:
    """A formula that is 0 at ``q`` and positive at ``p`` over the standard MV-algebra."""
    return separating_literal(p, q).formula


def _ceil_log2(x: Fraction) -> int:
    """Smallest ``k >= 0`` with ``2**k >= x``, exactly."""
    return max(0, (math.ceil(x) - 1).bit_length())


def step_bound(sep: Separator) -> int:
    """Upper bound on the doubling steps of a separator."""
    return _ceil_log2(1 / (sep.high - sep.low)) + _ceil_log2(1 / sep.straddle_high) + 2
