"""Exact BL-chains built as ordinal sums of basic hoops.

An :class:`Algebra` is an ordered tuple of summands, bottom to top. The
first summand is bounded (a finite MV-chain or the rational MV-algebra) and
supplies the global bottom. All summands share the top element, which is
always represented by :data:`TOP` rather than by a local value ``1``.

Truth values are :class:`TruthValue` pairs ``(summand, value)`` with an
exact :class:`fractions.Fraction` local value.
"""
from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

__all__ = [
    "FiniteMV", "RationalMV", "RationalGodelHoop", "CancellativeHoop",
    "Summand", "Algebra", "TruthValue", "TOP",
    "AlgebraError", "InfiniteAlgebraError", "AxiomViolation",
    "ChainTable", "parse_algebra", "parse_truth_value", "format_truth_value",
    "tnorm_apply", "residuum_apply", "elements", "idempotents",
    "is_mv_chain", "is_godel_chain", "decompose_finite_chain",
    "enumerate_finite_chains", "subalgebra_generated", "check_bl_axioms",
    "from_sizes", "MVQ", "GQ", "PQ",
]


class AlgebraError(ValueError):
    pass


class InfiniteAlgebraError(AlgebraError):
    """Raised by operations that need to enumerate the carrier."""


class AxiomViolation(AlgebraError):
    def __init__(self, axiom: str, witness: tuple) -> None:
        super().__init__(f"{axiom} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


# -- summands -----------------------------------------------------------------

@dataclass(frozen=True)
class FiniteMV:
    """The Wajsberg hoop on ``{0/m, ..., m/m}``."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise AlgebraError(f"FiniteMV needs m >= 1, got {self.m}")

    finite = True
    bounded = True
    idempotent = property(lambda self: self.m == 1)

    def contains(self, x: Fraction) -> bool:
        return 0 <= x < 1 and (x * self.m).denominator == 1

    def locals(self) -> list[Fraction]:
        return [Fraction(j, self.m) for j in range(self.m)]

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return max(Fraction(0), x + y - 1)

    def res(self, x: Fraction, y: Fraction) -> Fraction:
        # only called with x > y
        return 1 - x + y

    def __str__(self) -> str:
        return "2" if self.m == 1 else f"MV[{self.m}]"


@dataclass(frozen=True)
class RationalMV:
    finite = False
    bounded = True
    idempotent = False

    def contains(self, x: Fraction) -> bool:
        return 0 <= x < 1

    mul = FiniteMV.mul
    res = FiniteMV.res

    def __str__(self) -> str:
        return "MVQ"


@dataclass(frozen=True)
class RationalGodelHoop:
    finite = False
    bounded = False
    idempotent = True

    def contains(self, x: Fraction) -> bool:
        return 0 < x < 1

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return min(x, y)

    def res(self, x: Fraction, y: Fraction) -> Fraction:
        return y

    def __str__(self) -> str:
        return "GHQ"


@dataclass(frozen=True)
class CancellativeHoop:
    finite = False
    bounded = False
    idempotent = False

    def contains(self, x: Fraction) -> bool:
        return 0 < x < 1

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    def res(self, x: Fraction, y: Fraction) -> Fraction:
        return y / x

    def __str__(self) -> str:
        return "C"


Summand = FiniteMV | RationalMV | RationalGodelHoop | CancellativeHoop


# -- truth values ---------------------------------------------------------------

@functools.total_ordering
@dataclass(frozen=True)
class TruthValue:
    """Element of an ordinal sum; ``summand == -1`` marks the shared top."""

    summand: int
    value: Fraction

    @property
    def is_top(self) -> bool:
        return self.summand < 0

    def _key(self) -> tuple:
        return (1, 0, 0) if self.is_top else (0, self.summand, self.value)

    def __lt__(self, other: "TruthValue") -> bool:
        return self._key() < other._key()

    def __repr__(self) -> str:
        return "TOP" if self.is_top else f"TruthValue({self.summand}, {self.value})"


TOP = TruthValue(-1, Fraction(1))


# -- algebras -------------------------------------------------------------------

@dataclass(frozen=True)
class Algebra:
    summands: tuple[Summand, ...]
    _elements: tuple = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(self.summands))
        if not self.summands:
            raise AlgebraError("an algebra needs at least one summand")
        if not self.summands[0].bounded:
            raise AlgebraError(f"first summand must be bounded, got {self.summands[0]}")

    # structure
    @property
    def is_finite(self) -> bool:
        return all(s.finite for s in self.summands)

    @property
    def bottom(self) -> TruthValue:
        return TruthValue(0, Fraction(0))

    @property
    def top(self) -> TruthValue:
        return TOP

    def __len__(self) -> int:
        return len(self.elements())

    def __str__(self) -> str:
        return _ALIAS_NAMES.get(self.summands) or " (+) ".join(map(str, self.summands))

    def contains(self, a: TruthValue) -> bool:
        if not isinstance(a, TruthValue):
            return False
        if a.is_top:
            return True
        return 0 <= a.summand < len(self.summands) and self.summands[a.summand].contains(a.value)

    def check(self, a: TruthValue) -> TruthValue:
        if not self.contains(a):
            raise AlgebraError(f"{a!r} is not an element of {self}")
        return a

    def elements(self) -> tuple[TruthValue, ...]:
        if self._elements is None:
            if not self.is_finite:
                raise InfiniteAlgebraError(f"{self} is infinite")
            els = [TruthValue(k, x) for k, s in enumerate(self.summands) for x in s.locals()]
            object.__setattr__(self, "_elements", tuple(els) + (TOP,))
        return self._elements

    # operations
    def tnorm(self, a: TruthValue, b: TruthValue) -> TruthValue:
        self.check(a)
        self.check(b)
        if a.is_top:
            return b
        if b.is_top:
            return a
        if a.summand == b.summand:
            return TruthValue(a.summand, self.summands[a.summand].mul(a.value, b.value))
        return a if a.summand < b.summand else b

    def residuum(self, a: TruthValue, b: TruthValue) -> TruthValue:
        self.check(a)
        self.check(b)
        if a <= b:
            return TOP
        if a.summand == b.summand:
            return TruthValue(a.summand, self.summands[a.summand].res(a.value, b.value))
        return b

    def neg(self, a: TruthValue) -> TruthValue:
        return self.residuum(a, self.bottom)

    # rational literals
    def from_rational(self, x: Fraction | int | str) -> TruthValue:
        """The element named by a plain rational, when that name is unambiguous."""
        x = Fraction(x)
        if x == 1:
            return TOP
        if x == 0:
            return self.bottom
        hits = [k for k, s in enumerate(self.summands) if s.contains(x)]
        if not hits:
            raise AlgebraError(f"{x} is not an element of {self}")
        if len(hits) > 1:
            raise AlgebraError(f"{x} is ambiguous in {self}; qualify it as k:{x}")
        return TruthValue(hits[0], x)

    def to_rational(self, a: TruthValue) -> Fraction:
        """Inverse of :meth:`from_rational` on unambiguously named elements."""
        if a.is_top:
            return Fraction(1)
        try:
            if self.from_rational(a.value) == a:
                return a.value
        except AlgebraError:
            pass
        raise AlgebraError(f"{a!r} has no plain rational name in {self}")

    def table(self) -> "ChainTable":
        els = self.elements()
        index = {a: i for i, a in enumerate(els)}
        tn = tuple(tuple(index[self.tnorm(a, b)] for b in els) for a in els)
        rs = tuple(tuple(index[self.residuum(a, b)] for b in els) for a in els)
        return ChainTable(tn, rs)


def tnorm_apply(alg: Algebra, a: TruthValue, b: TruthValue) -> TruthValue:
    return alg.tnorm(a, b)


def residuum_apply(alg: Algebra, a: TruthValue, b: TruthValue) -> TruthValue:
    return alg.residuum(a, b)


def elements(alg: Algebra) -> list[TruthValue]:
    return list(alg.elements())


def from_sizes(sizes: Iterable[int]) -> Algebra:
    return Algebra(tuple(FiniteMV(m) for m in sizes))


MVQ = Algebra((RationalMV(),))
GQ = Algebra((FiniteMV(1), RationalGodelHoop()))
PQ = Algebra((FiniteMV(1), CancellativeHoop()))

_ALIAS_NAMES = {MVQ.summands: "MVQ", GQ.summands: "GQ", PQ.summands: "PQ"}


# -- descriptors ------------------------------------------------------------------

_ATOMS = {
    "MVQ": MVQ.summands,
    "GQ": GQ.summands,
    "PQ": PQ.summands,
    "2": (FiniteMV(1),),
    "C": (CancellativeHoop(),),
    "GHQ": (RationalGodelHoop(),),
}
_MV_RE = re.compile(r"^MV\[(\d+)\]$")


def parse_algebra(text: str) -> Algebra:
    """Parse a descriptor such as ``MV[2]``, ``PQ`` or ``2 (+) C (+) C``."""
    summands: list[Summand] = []
    for part in text.split("(+)"):
        token = part.strip()
        m = _MV_RE.match(token)
        if m:
            summands.append(FiniteMV(int(m.group(1))))
        elif token in _ATOMS:
            summands.extend(_ATOMS[token])
        else:
            raise AlgebraError(f"unknown summand {token!r} in descriptor {text!r}")
    return Algebra(tuple(summands))


_TV_RE = re.compile(r"^(?:(\d+)\s*:\s*)?(-?\d+(?:/\d+)?)$")


def parse_truth_value(alg: Algebra, text: str) -> TruthValue:
    token = text.strip()
    if token == "top":
        return TOP
    if token == "bot":
        return alg.bottom
    m = _TV_RE.match(token)
    if not m:
        raise AlgebraError(f"bad truth value literal {text!r}")
    x = Fraction(m.group(2))
    if m.group(1) is None:
        return alg.from_rational(x)
    if x == 1:
        return TOP
    return alg.check(TruthValue(int(m.group(1)), x))


def format_truth_value(alg: Algebra, a: TruthValue) -> str:
    if a.is_top:
        return "top"
    if a == alg.bottom:
        return "bot"
    try:
        return str(alg.to_rational(a))
    except AlgebraError:
        return f"{a.summand}:{a.value}"


# -- finite structure -----------------------------------------------------------------

def idempotents(alg: Algebra) -> list[TruthValue]:
    return [a for a in alg.elements() if alg.tnorm(a, a) == a]


def is_mv_chain(alg: Algebra) -> bool:
    return all(alg.neg(alg.neg(a)) == a for a in alg.elements())


def is_godel_chain(alg: Algebra) -> bool:
    return all(alg.tnorm(a, a) == a for a in alg.elements())


def enumerate_finite_chains(n: int) -> list[Algebra]:
    """Every ``n``-element BL-chain, one per isomorphism class.

    These are the ordinal sums of finite MV-chains whose sizes add up to
    ``n - 1``; there are ``2**(n-2)`` of them.
    """
    if n < 2:
        raise AlgebraError(f"a BL-chain has at least two elements, got n={n}")
    total = n - 1
    chains = []
    for cuts in itertools.product((False, True), repeat=total - 1):
        sizes, run = [], 1
        for cut in cuts:
            if cut:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        chains.append(from_sizes(sizes))
    return chains


def subalgebra_generated(alg: Algebra, seed: Iterable[TruthValue]) -> list[TruthValue]:
    """Closure of ``seed`` together with bottom and top under the two operations."""
    found = {alg.bottom, TOP}
    for a in seed:
        found.add(alg.check(a))
    frontier = list(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(found):
                for c in (alg.tnorm(a, b), alg.tnorm(b, a), alg.residuum(a, b), alg.residuum(b, a)):
                    if c not in found:
                        new.add(c)
        found |= new
        frontier = list(new)
    return sorted(found)


# -- raw operation tables -----------------------------------------------------------

@dataclass(frozen=True)
class ChainTable:
    """Cayley tables of a finite chain on ``0 < 1 < ... < n-1``."""

    tnorm: tuple[tuple[int, ...], ...]
    residuum: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        tn = tuple(tuple(int(x) for x in row) for row in self.tnorm)
        rs = tuple(tuple(int(x) for x in row) for row in self.residuum)
        n = len(tn)
        if n < 2 or any(len(r) != n for r in tn) or len(rs) != n or any(len(r) != n for r in rs):
            raise AlgebraError("tables must be square, of equal size, with at least two elements")
        if any(not 0 <= x < n for row in tn + rs for x in row):
            raise AlgebraError("table entries must index elements")
        object.__setattr__(self, "tnorm", tn)
        object.__setattr__(self, "residuum", rs)

    @property
    def size(self) -> int:
        return len(self.tnorm)

    def to_json(self) -> dict:
        return {"size": self.size, "tnorm": [list(r) for r in self.tnorm],
                "residuum": [list(r) for r in self.residuum]}

    @classmethod
    def from_json(cls, data: dict) -> "ChainTable":
        return cls(data["tnorm"], data["residuum"])


def check_bl_axioms(table: ChainTable) -> None:
    """Exhaustively check the BL-chain axioms; raise :class:`AxiomViolation`."""
    n = table.size
    t, r = table.tnorm, table.residuum
    top = n - 1
    rng = range(n)
    for a in rng:
        if t[a][top] != a:
            raise AxiomViolation("top is neutral", (a, top))
        if t[0][a] != 0:
            raise AxiomViolation("bottom absorbs", (0, a))
        for b in rng:
            if t[a][b] != t[b][a]:
                raise AxiomViolation("commutativity", (a, b))
            if t[a][r[a][b]] != min(a, b):
                raise AxiomViolation("divisibility", (a, b))
            if (r[a][b] == top) != (a <= b):
                raise AxiomViolation("residuum determines order", (a, b))
            for c in rng:
                if t[a][t[b][c]] != t[t[a][b]][c]:
                    raise AxiomViolation("associativity", (a, b, c))
                if b <= c and t[a][b] > t[a][c]:
                    raise AxiomViolation("monotonicity", (a, b, c))
                if (t[a][c] <= b) != (c <= r[a][b]):
                    raise AxiomViolation("residuation", (a, b, c))


def decompose_finite_chain(source: Algebra | ChainTable) -> list[int]:
    """Sizes ``[m1, ..., mr]`` with ``source`` isomorphic to ``MV[m1] (+) ... (+) MV[mr]``.

    Tables are cut at their nontrivial idempotents; each segment must pass
    the double-negation test relative to its own bottom, and the rebuilt
    ordinal sum must reproduce the input tables exactly.
    """
    table = source.table() if isinstance(source, Algebra) else source
    check_bl_axioms(table)
    n = table.size
    t, r = table.tnorm, table.residuum
    cuts = [e for e in range(n - 1) if t[e][e] == e]
    bounds = cuts + [n - 1]
    for lo, hi in zip(bounds, bounds[1:]):
        for a in range(lo, hi):
            if r[r[a][lo]][lo] != a:
                raise AxiomViolation("segment is an MV-chain", (lo, a))
    sizes = [hi - lo for lo, hi in zip(bounds, bounds[1:])]
    rebuilt = from_sizes(sizes).table()
    if rebuilt != table:
        for a, b in itertools.product(range(n), repeat=2):
            if rebuilt.tnorm[a][b] != t[a][b] or rebuilt.residuum[a][b] != r[a][b]:
                raise AxiomViolation("ordinal sum reconstruction", (a, b))
    return sizes
