"""Valuations, evaluation and brute-force semantic judgments.

Judgments over a whole valuation grid (tautology, equivalence, one-sets,
consequence) require a finite algebra. Grids are walked in lexicographic
order, first variable most significant, elements in increasing order, so the
reported counterexample is always the least one.

:func:`enumerate_formulas` is the search substrate used by the principle
checkers. With semantic deduplication it keeps one representative per term
function, using numpy index tables over the grid.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .algebra import (
    Algebra,
    InfiniteAlgebraError,
    TruthValue,
    format_truth_value,
    parse_truth_value,
)
from .formula import BOT, Conj, Formula, Imp, Var, fold

__all__ = [
    "Valuation", "OneSet", "EvaluationError",
    "evaluate", "all_valuations", "is_tautology", "are_equivalent",
    "one_set", "semantic_consequence", "enumerate_formulas",
    "parse_valuation", "format_valuation", "FormulaClasses",
]


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class Valuation:
    """Assignment of truth values to a finite, ordered set of variables."""

    algebra: Algebra
    assignment: tuple[tuple[int, TruthValue], ...]

    def __post_init__(self) -> None:
        items = tuple(sorted(self.assignment))
        if len({i for i, _ in items}) != len(items):
            raise EvaluationError("a variable is assigned twice")
        for i, a in items:
            if i < 1:
                raise EvaluationError(f"bad variable index {i}")
            self.algebra.check(a)
        object.__setattr__(self, "assignment", items)

    @classmethod
    def of(cls, alg: Algebra, mapping: Mapping[int, TruthValue]) -> "Valuation":
        return cls(alg, tuple(mapping.items()))

    @classmethod
    def constant(cls, alg: Algebra, variables: Iterable[int], a: TruthValue) -> "Valuation":
        return cls(alg, tuple((i, a) for i in variables))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.assignment)

    def as_dict(self) -> dict[int, TruthValue]:
        return dict(self.assignment)

    def __getitem__(self, i: int) -> TruthValue:
        for j, a in self.assignment:
            if j == i:
                return a
        raise EvaluationError(f"X{i} is outside the valuation support {self.support}")

    def agrees_with(self, other: "Valuation") -> bool:
        """Equal on the common support."""
        mine, theirs = self.as_dict(), other.as_dict()
        return all(mine[i] == theirs[i] for i in mine.keys() & theirs.keys())

    def __str__(self) -> str:
        return format_valuation(self)


def parse_valuation(alg: Algebra, text: str) -> Valuation:
    """Parse ``X1=1/2, X2=top``."""
    mapping: dict[int, TruthValue] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        m = re.match(r"^X(\d+)\s*=\s*(.+)$", part)
        if not m:
            raise EvaluationError(f"bad valuation entry {part!r}")
        i = int(m.group(1))
        if i in mapping:
            raise EvaluationError(f"X{i} assigned twice")
        mapping[i] = parse_truth_value(alg, m.group(2))
    return Valuation.of(alg, mapping)


def format_valuation(v: Valuation) -> str:
    return ", ".join(f"X{i}={format_truth_value(v.algebra, a)}" for i, a in v.assignment)


def evaluate(alg: Algebra, v: Valuation, f: Formula) -> TruthValue:
    missing = f.variables - set(v.support)
    if missing:
        raise EvaluationError(f"variables {sorted(missing)} are not in the valuation support")
    values = v.as_dict()
    return fold(f, lambda: alg.bottom, values.__getitem__, alg.residuum, alg.tnorm)


def _require_finite(alg: Algebra) -> None:
    if not alg.is_finite:
        raise InfiniteAlgebraError(f"{alg} is infinite; grid judgments need a finite algebra")


def all_valuations(alg: Algebra, variables: Sequence[int]) -> Iterator[Valuation]:
    _require_finite(alg)
    variables = sorted(set(variables))
    for values in itertools.product(alg.elements(), repeat=len(variables)):
        yield Valuation(alg, tuple(zip(variables, values)))


def _vars_for(variables: Sequence[int] | None, formulas: Iterable[Formula]) -> list[int]:
    needed: set[int] = set()
    for f in formulas:
        needed |= f.variables
    if variables is None:
        return sorted(needed)
    if not needed <= set(variables):
        raise EvaluationError(f"variables {sorted(needed - set(variables))} not covered")
    return sorted(set(variables))


def is_tautology(alg: Algebra, f: Formula, variables: Sequence[int] | None = None
                 ) -> tuple[bool, Valuation | None]:
    for v in all_valuations(alg, _vars_for(variables, [f])):
        if not evaluate(alg, v, f).is_top:
            return False, v
    return True, None


def are_equivalent(alg: Algebra, f: Formula, g: Formula, variables: Sequence[int] | None = None
                   ) -> tuple[bool, Valuation | None]:
    for v in all_valuations(alg, _vars_for(variables, [f, g])):
        if evaluate(alg, v, f) != evaluate(alg, v, g):
            return False, v
    return True, None


@dataclass(frozen=True)
class OneSet:
    algebra: Algebra
    variables: tuple[int, ...]
    points: frozenset[tuple[TruthValue, ...]]

    def __contains__(self, point: tuple[TruthValue, ...]) -> bool:
        return tuple(point) in self.points

    def __len__(self) -> int:
        return len(self.points)


def one_set(alg: Algebra, f: Formula, variables: Sequence[int] | None = None) -> OneSet:
    variables = _vars_for(variables, [f])
    points = frozenset(
        tuple(a for _, a in v.assignment)
        for v in all_valuations(alg, variables)
        if evaluate(alg, v, f).is_top
    )
    return OneSet(alg, tuple(variables), points)


def semantic_consequence(alg: Algebra, premises: Iterable[Formula], f: Formula,
                         variables: Sequence[int] | None = None
                         ) -> tuple[bool, Valuation | None]:
    premises = list(premises)
    for v in all_valuations(alg, _vars_for(variables, premises + [f])):
        if all(evaluate(alg, v, p).is_top for p in premises) and not evaluate(alg, v, f).is_top:
            return False, v
    return True, None


# -- formula enumeration ------------------------------------------------------------

_CONNECTIVES = {"imp": Imp, "conj": Conj}


def _check_connectives(connectives: Iterable[str]) -> tuple[str, ...]:
    out = tuple(connectives)
    unknown = set(out) - set(_CONNECTIVES)
    if unknown:
        raise ValueError(f"unknown connectives {sorted(unknown)}; choose from {sorted(_CONNECTIVES)}")
    return out


def _syntactic(variables: Sequence[int], max_depth: int,
               connectives: tuple[str, ...]) -> Iterator[Formula]:
    levels: list[list[Formula]] = [[BOT] + [Var(i) for i in variables]]
    yield from levels[0]
    for _ in range(max_depth):
        upto = [f for level in levels for f in level]
        newest = set(map(id, levels[-1]))
        level = []
        for name in connectives:
            make = _CONNECTIVES[name]
            for a in upto:
                for b in upto:
                    if id(a) in newest or id(b) in newest:
                        f = make(a, b)
                        level.append(f)
                        yield f
        levels.append(level)


class FormulaClasses:
    """Term functions reachable up to a depth, one formula per function.

    ``points`` are the valuations on which term functions are compared. For a
    finite algebra the default is the full grid over ``variables``; any finite
    list of valuations works for infinite algebras. Because evaluation is
    compositional, combining representatives reaches every function that a
    formula of the same depth defines.
    """

    def __init__(self, alg: Algebra, variables: Sequence[int], max_depth: int,
                 points: Sequence[Valuation] | None = None,
                 connectives: Iterable[str] = ("imp", "conj")) -> None:
        if max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        self.algebra = alg
        self.variables = sorted(set(variables))
        self.connectives = _check_connectives(connectives)
        if points is None:
            points = list(all_valuations(alg, self.variables))
        self.points = list(points)
        for v in self.points:
            if not set(self.variables) <= set(v.support):
                raise EvaluationError("a comparison point does not cover all variables")
        # intern every value that shows up, with op tables built lazily
        self.values: list[TruthValue] = []
        self._index: dict[TruthValue, int] = {}
        if alg.is_finite:
            for a in alg.elements():
                self._intern(a)
        self.formulas: list[Formula] = []
        self.depths: list[int] = []
        self._rows: list[np.ndarray] = []
        self._seen: dict[bytes, int] = {}
        self._tables: dict[str, np.ndarray] = {}
        self._pair_cache: dict[tuple[str, int, int], int] = {}
        self._build(max_depth)

    def _intern(self, a: TruthValue) -> int:
        if a not in self._index:
            self._index[a] = len(self.values)
            self.values.append(a)
        return self._index[a]

    def _combine(self, name: str, row: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """Apply connective ``name`` to ``row`` and each of ``rows``, pointwise."""
        if self.algebra.is_finite:
            table = self._tables.get(name)
            if table is None:
                op = self.algebra.residuum if name == "imp" else self.algebra.tnorm
                table = np.array([[self._index[op(a, b)] for b in self.values]
                                  for a in self.values], dtype=np.int64)
                self._tables[name] = table
            return table[row[None, :], rows]
        # infinite carrier: only the value pairs that actually occur are computed
        op = self.algebra.residuum if name == "imp" else self.algebra.tnorm
        left = np.broadcast_to(row, rows.shape)
        pairs = np.stack([left, rows], axis=-1).reshape(-1, 2)
        uniq, inverse = np.unique(pairs, axis=0, return_inverse=True)
        out = np.empty(len(uniq), dtype=np.int64)
        for k, (i, j) in enumerate(uniq):
            key = (name, int(i), int(j))
            if key not in self._pair_cache:
                self._pair_cache[key] = self._intern(op(self.values[i], self.values[j]))
            out[k] = self._pair_cache[key]
        return out[inverse.reshape(-1)].reshape(rows.shape)

    def _add(self, f: Formula, row: np.ndarray, depth: int) -> bool:
        key = row.tobytes()
        if key in self._seen:
            return False
        self._seen[key] = len(self.formulas)
        self.formulas.append(f)
        self.depths.append(depth)
        self._rows.append(row)
        return True

    def _build(self, max_depth: int) -> None:
        bot = self._intern(self.algebra.bottom)
        self._add(BOT, np.full(len(self.points), bot, dtype=np.int64), 0)
        for i in self.variables:
            row = np.array([self._intern(v[i]) for v in self.points], dtype=np.int64)
            self._add(Var(i), row, 0)
        level_start = 0
        for depth in range(1, max_depth + 1):
            count = len(self.formulas)
            if level_start == count:
                break  # closed: nothing new appeared at the previous depth
            rows = np.stack(self._rows[:count])
            for name in self.connectives:
                make = _CONNECTIVES[name]
                for a in range(count):
                    # pairs of two older representatives were combined already
                    b_from = 0 if a >= level_start else level_start
                    block = self._combine(name, rows[a], rows[b_from:count])
                    _, first = np.unique(block, axis=0, return_index=True)
                    for j in np.sort(first):
                        b = b_from + int(j)
                        self._add(make(self.formulas[a], self.formulas[b]), block[j], depth)
            level_start = count

    def __len__(self) -> int:
        return len(self.formulas)

    def row(self, k: int) -> list[TruthValue]:
        return [self.values[i] for i in self._rows[k]]

    def value_matrix(self) -> np.ndarray:
        return np.stack(self._rows)

    def index_of(self, a: TruthValue) -> int | None:
        return self._index.get(a)


def enumerate_formulas(variables: Sequence[int], max_depth: int,
                       connectives: Iterable[str] = ("imp", "conj"),
                       dedup: Algebra | None = None,
                       points: Sequence[Valuation] | None = None) -> Iterator[Formula]:
    """Core formulas over ``variables`` with depth at most ``max_depth``.

    Without ``dedup`` every syntactically distinct formula is produced once,
    by increasing depth. With ``dedup`` only the first formula of each term
    function over that algebra is produced (compared on ``points`` if given,
    otherwise on the full grid).
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    variables = sorted(set(variables))
    connectives = _check_connectives(connectives)
    if dedup is None:
        yield from _syntactic(variables, max_depth, connectives)
    else:
        yield from FormulaClasses(dedup, variables, max_depth, points, connectives).formulas
