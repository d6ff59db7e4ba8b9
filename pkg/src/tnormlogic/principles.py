"""Checkers for the one-set principle (P1) and the separation principles (P2 family).

* P1: two formulas true under exactly the same valuations are equivalent.
* P2: distinct valuations ``mu != nu`` admit ``alpha`` with ``mu(alpha) > 0``
  and ``nu(alpha) = 0``. P2prime asks for ``mu(alpha) < 1 = nu(alpha)`` and
  P2doubleprime for ``mu(alpha) = 0``, ``nu(alpha) = 1``.

Verdicts are backed by structure wherever possible. P1 holds exactly on
chains of idempotents and fails elsewhere with the pair ``X1``, ``X1 & X1``.
P2 holds exactly on MV-chains, where every pair gets an explicit separator;
on any other chain two constant valuations into an upper summand cannot be
told apart by zero-sets, and a bounded formula search confirms it.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .algebra import (
    TOP,
    Algebra,
    AlgebraError,
    CancellativeHoop,
    FiniteMV,
    PQ,
    RationalGodelHoop,
    RationalMV,
    TruthValue,
    decompose_finite_chain,
    enumerate_finite_chains,
    format_truth_value,
    from_sizes,
    is_godel_chain,
    is_mv_chain,
)
from .formula import Conj, Formula, Var, neg, power, render_formula
from .mcnaughton import separating_literal
from .semantics import FormulaClasses, Valuation, all_valuations, evaluate

__all__ = [
    "Principle", "Verdict", "Separation", "PrincipleReport", "Classification",
    "ChainClass", "InvariantViolation", "check_p1", "check_p2",
    "indiscernible_pair", "classify_chain", "cross_validate", "census", "CensusRow",
]


class InvariantViolation(RuntimeError):
    """A computed result contradicts a structural guarantee."""


class Principle(str, enum.Enum):
    P1 = "P1"
    P2 = "P2"
    P2_PRIME = "P2prime"
    P2_DOUBLE_PRIME = "P2doubleprime"


class Verdict(str, enum.Enum):
    HOLDS_EXHAUSTIVELY = "HoldsExhaustively"
    HOLDS_CONSTRUCTIVELY = "HoldsConstructively"
    FAILS_WITH_WITNESS = "FailsWithWitness"
    UNDECIDED_AT_DEPTH = "UndecidedAtDepth"

    @property
    def holds(self) -> bool:
        return self in (Verdict.HOLDS_EXHAUSTIVELY, Verdict.HOLDS_CONSTRUCTIVELY)


@dataclass(frozen=True)
class Separation:
    mu: Valuation
    nu: Valuation
    formula: Formula
    values: tuple[TruthValue, TruthValue]

    def to_dict(self) -> dict:
        alg = self.mu.algebra
        return {"mu": str(self.mu), "nu": str(self.nu), "formula": render_formula(self.formula),
                "values": [format_truth_value(alg, a) for a in self.values]}


@dataclass(frozen=True)
class PrincipleReport:
    principle: Principle
    algebra: Algebra
    verdict: Verdict
    n_vars: int
    depth: int | None
    formulas: tuple[Formula, ...] = ()
    valuations: tuple[Valuation, ...] = ()
    separations: tuple[Separation, ...] = ()
    classes: int | None = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict.holds

    @property
    def separator(self) -> Formula | None:
        return self.separations[0].formula if self.separations else None

    def witness(self) -> dict | None:
        alg = self.algebra
        if self.principle is Principle.P1 and self.formulas:
            v = self.valuations[0]
            return {
                "formulas": [render_formula(f) for f in self.formulas],
                "valuation": str(v),
                "values": [format_truth_value(alg, evaluate(alg, v, f)) for f in self.formulas],
            }
        if self.valuations:
            return {"valuations": [str(v) for v in self.valuations]}
        if self.separations:
            return {"pairs": len(self.separations), "first": self.separations[0].to_dict()}
        return None

    def to_dict(self) -> dict:
        sep = self.separator
        return {
            "principle": self.principle.value,
            "algebra": str(self.algebra),
            "verdict": self.verdict.value,
            "witness": self.witness(),
            "separator": render_formula(sep) if sep is not None else None,
            "depth": self.depth,
            "n_vars": self.n_vars,
            "classes": self.classes,
            "note": self.note,
        }


# -- P1 -----------------------------------------------------------------------------

_X1 = Var(1)
_X1_SQUARED = Conj(_X1, _X1)


def _non_idempotent(alg: Algebra) -> TruthValue | None:
    for k, s in enumerate(alg.summands):
        if isinstance(s, FiniteMV) and s.m >= 2:
            return TruthValue(k, Fraction(1, s.m))
        if isinstance(s, (RationalMV, CancellativeHoop)):
            return TruthValue(k, Fraction(1, 2))
    return None


def _one_set_collision(classes: FormulaClasses) -> tuple[int, int, int] | None:
    """First pair of term functions with equal one-sets, and a grid point where they differ."""
    top = classes.index_of(TOP)
    rows = classes.value_matrix()
    first: dict[bytes, int] = {}
    for k in range(len(classes)):
        key = np.packbits(rows[k] == top).tobytes()
        if key in first:
            j = first[key]
            point = int(np.flatnonzero(rows[j] != rows[k])[0])
            return j, k, point
        first[key] = k
    return None


def check_p1(alg: Algebra, n_vars: int = 1, depth: int = 3) -> PrincipleReport:
    """Check P1 on ``alg`` over ``n_vars`` variables and formulas up to ``depth``."""
    if n_vars < 1 or depth < 1:
        raise ValueError("n_vars and depth must be >= 1")
    variables = list(range(1, n_vars + 1))

    def fails(v: Valuation, note: str) -> PrincipleReport:
        return PrincipleReport(Principle.P1, alg, Verdict.FAILS_WITH_WITNESS, n_vars, depth,
                               formulas=(_X1, _X1_SQUARED), valuations=(v,), note=note)

    if not alg.is_finite:
        a = _non_idempotent(alg)
        if a is not None:
            v = Valuation.constant(alg, [1], a)
            if evaluate(alg, v, _X1) == evaluate(alg, v, _X1_SQUARED):
                raise InvariantViolation(f"{a!r} was expected to be non-idempotent")
            return fails(v, "fixed pair; both formulas take value 1 only at X1=1")
        # all summands idempotent: Goedel term functions on n variables only see
        # the order pattern of the values, which an (n+2)-element chain realises
        sub = check_p1(from_sizes([1] * (n_vars + 1)), n_vars, depth)
        if sub.holds:
            return PrincipleReport(Principle.P1, alg, sub.verdict, n_vars, depth,
                                   classes=sub.classes,
                                   note=f"checked on the {n_vars + 2}-element Goedel chain")
        raise InvariantViolation(f"P1 failed on a Goedel chain: {sub.to_dict()}")

    for v in all_valuations(alg, [1]):
        if evaluate(alg, v, _X1) != evaluate(alg, v, _X1_SQUARED):
            ones = [evaluate(alg, u, _X1).is_top == evaluate(alg, u, _X1_SQUARED).is_top
                    for u in all_valuations(alg, [1])]
            if not all(ones):
                raise InvariantViolation("X1 and X1 & X1 have different one-sets")
            return fails(v, "fixed pair; equal one-sets checked on the whole grid")

    classes = FormulaClasses(alg, variables, depth)
    hit = _one_set_collision(classes)
    if hit is not None:
        j, k, point = hit
        v = classes.points[point]
        return PrincipleReport(Principle.P1, alg, Verdict.FAILS_WITH_WITNESS, n_vars, depth,
                               formulas=(classes.formulas[j], classes.formulas[k]),
                               valuations=(v,), classes=len(classes))
    verdict = Verdict.HOLDS_EXHAUSTIVELY if is_godel_chain(alg) else Verdict.UNDECIDED_AT_DEPTH
    return PrincipleReport(Principle.P1, alg, verdict, n_vars, depth, classes=len(classes))


# -- P2 family ------------------------------------------------------------------------

def _condition(variant: Principle, alg: Algebra) -> Callable[[TruthValue, TruthValue], bool]:
    bot = alg.bottom
    if variant is Principle.P2:
        return lambda m, n: m != bot and n == bot
    if variant is Principle.P2_PRIME:
        return lambda m, n: not m.is_top and n.is_top
    if variant is Principle.P2_DOUBLE_PRIME:
        return lambda m, n: m == bot and n.is_top
    raise ValueError(f"{variant} is not a separation principle")


def indiscernible_pair(alg: Algebra, n_vars: int = 1) -> tuple[Valuation, Valuation]:
    """Two constant valuations into the top summand that share all zero-sets."""
    if len(alg.summands) < 2:
        raise AlgebraError(f"{alg} has a single summand; every pair of valuations is separable")
    k = len(alg.summands) - 1
    s = alg.summands[k]
    if isinstance(s, FiniteMV):
        v = TruthValue(k, Fraction(0))
        w = TruthValue(k, Fraction(1, s.m)) if s.m >= 2 else TOP
    else:
        v, w = TruthValue(k, Fraction(1, 2)), TruthValue(k, Fraction(1, 3))
    variables = range(1, n_vars + 1)
    return Valuation.constant(alg, variables, v), Valuation.constant(alg, variables, w)


def _is_mv_single(alg: Algebra) -> bool:
    return len(alg.summands) == 1


def _point(alg: Algebra, v: Valuation) -> tuple[Fraction, ...]:
    return tuple(alg.to_rational(a) for _, a in v.assignment)


def _sample_pairs(alg: Algebra, n_vars: int, samples: int, seed: int
                  ) -> list[tuple[Valuation, Valuation]]:
    rng = random.Random(seed)
    variables = range(1, n_vars + 1)

    def point() -> Valuation:
        return Valuation(alg, tuple(
            (i, alg.from_rational(Fraction(rng.randint(0, d), d)))
            for i, d in zip(variables, (rng.randint(1, 16) for _ in variables))))

    pairs = []
    while len(pairs) < samples:
        mu, nu = point(), point()
        if mu != nu:
            pairs.append((mu, nu))
    return pairs


def _separate(alg: Algebra, mu: Valuation, nu: Valuation, variant: Principle) -> Separation:
    alpha = separating_literal(_point(alg, mu), _point(alg, nu)).formula
    if variant is not Principle.P2:
        alpha = neg(alpha)
    if variant is Principle.P2_DOUBLE_PRIME:
        x = alg.to_rational(evaluate(alg, mu, alpha))  # < 1
        alpha = power(max(1, math.ceil(1 / (1 - x))), alpha)
    values = (evaluate(alg, mu, alpha), evaluate(alg, nu, alpha))
    if not _condition(variant, alg)(*values):
        raise InvariantViolation(
            f"{variant.value} separator {render_formula(alpha)} fails on {mu} / {nu}: {values}")
    return Separation(mu, nu, alpha, values)


def check_p2(alg: Algebra, n_vars: int = 1, depth: int = 3,
             variant: Principle | str = Principle.P2,
             pairs: Iterable[tuple[Valuation, Valuation]] | None = None,
             samples: int = 50, seed: int = 0) -> PrincipleReport:
    """Check a separation principle.

    On MV-chains every pair (the whole grid when finite, otherwise ``pairs`` or
    ``samples`` seeded random ones) gets an explicit, re-evaluated separator.
    On other chains the verdict comes from :func:`indiscernible_pair` and the
    absence of a separator among all formulas up to ``depth`` is confirmed.
    """
    variant = Principle(variant)
    cond = _condition(variant, alg)
    if n_vars < 1:
        raise ValueError("n_vars must be >= 1")
    variables = list(range(1, n_vars + 1))

    if _is_mv_single(alg):
        if pairs is None:
            if alg.is_finite:
                grid = list(all_valuations(alg, variables))
                pairs = [(mu, nu) for mu in grid for nu in grid if mu != nu]
            else:
                pairs = _sample_pairs(alg, n_vars, samples, seed)
        seps = tuple(_separate(alg, mu, nu, variant) for mu, nu in pairs)
        return PrincipleReport(variant, alg, Verdict.HOLDS_CONSTRUCTIVELY, n_vars, None,
                               separations=seps)

    mu, nu = indiscernible_pair(alg, n_vars)
    if variant is Principle.P2_PRIME:
        mu = Valuation.constant(alg, variables, TOP)
        nu = indiscernible_pair(alg, n_vars)[0]
    classes = FormulaClasses(alg, variables, depth, points=[mu, nu])
    for k in range(len(classes)):
        m, n = classes.row(k)
        if cond(m, n):
            raise InvariantViolation(
                f"{render_formula(classes.formulas[k])} separates {mu} from {nu} on {alg}")
    return PrincipleReport(variant, alg, Verdict.FAILS_WITH_WITNESS, n_vars, depth,
                           valuations=(mu, nu), classes=len(classes),
                           note="zero-sets agree on constant valuations into an upper summand")


# -- classification ---------------------------------------------------------------------

class ChainClass(str, enum.Enum):
    CLASSICAL = "Classical"
    GODEL = "GodelExtension"
    LUKASIEWICZ = "LukasiewiczExtension"
    PRODUCT_LIKE = "ProductLike"
    OTHER = "Other"


@dataclass(frozen=True)
class Classification:
    algebra: Algebra
    verdict: ChainClass
    idempotent_witness: TruthValue | None = None
    negation_witness: TruthValue | None = None
    decomposition: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        alg = self.algebra

        def fmt(a: TruthValue | None) -> str | None:
            return None if a is None else format_truth_value(alg, a)

        return {
            "algebra": str(alg),
            "verdict": self.verdict.value,
            "idempotent_witness": fmt(self.idempotent_witness),
            "negation_witness": fmt(self.negation_witness),
            "decomposition": list(self.decomposition) if self.decomposition else None,
        }


def _sample(alg: Algebra, k: int) -> TruthValue:
    if isinstance(alg.summands[k], FiniteMV):
        return TruthValue(k, Fraction(0))
    return TruthValue(k, Fraction(1, 2))


def classify_chain(alg: Algebra) -> Classification:
    if alg.is_finite:
        els = alg.elements()
        idem = next((a for a in els[1:-1] if alg.tnorm(a, a) == a), None)
        negneg = next((a for a in els if alg.neg(alg.neg(a)) != a), None)
        sizes = tuple(decompose_finite_chain(alg))
        if len(els) == 2:
            verdict = ChainClass.CLASSICAL
        elif is_godel_chain(alg):
            verdict = ChainClass.GODEL
        elif is_mv_chain(alg):
            verdict = ChainClass.LUKASIEWICZ
        else:
            verdict = ChainClass.OTHER
        if (verdict is ChainClass.LUKASIEWICZ) != (len(sizes) == 1 and len(els) > 2):
            raise InvariantViolation(f"double negation test disagrees with decomposition {sizes}")
        return Classification(alg, verdict, idem, negneg, sizes)

    s = alg.summands
    if all(isinstance(x, RationalGodelHoop) or x == FiniteMV(1) for x in s):
        verdict = ChainClass.GODEL
    elif len(s) == 1:
        verdict = ChainClass.LUKASIEWICZ
    elif s == PQ.summands:
        verdict = ChainClass.PRODUCT_LIKE
    else:
        verdict = ChainClass.OTHER
    idem = next((_sample(alg, k) for k in range(1, len(s))
                 if isinstance(s[k], (FiniteMV, RationalGodelHoop))), None)
    # every non-top element above the first summand has double negation top
    negneg = _sample(alg, 1) if len(s) > 1 else None
    return Classification(alg, verdict, idem, negneg, None)


def cross_validate(c: Classification, p1: PrincipleReport, p2: PrincipleReport) -> None:
    """Raise :class:`InvariantViolation` if principle verdicts contradict the classification."""
    expected = {
        ChainClass.CLASSICAL: (True, True),
        ChainClass.GODEL: (True, False),
        ChainClass.LUKASIEWICZ: (False, True),
        ChainClass.PRODUCT_LIKE: (False, False),
        ChainClass.OTHER: (False, False),
    }[c.verdict]
    got = (p1.holds, p2.holds)
    undecided = Verdict.UNDECIDED_AT_DEPTH in (p1.verdict, p2.verdict)
    if got != expected or undecided:
        raise InvariantViolation(
            f"{c.algebra} classified {c.verdict.value} but P1/P2 gave "
            f"{p1.verdict.value}/{p2.verdict.value}")


@dataclass(frozen=True)
class CensusRow:
    algebra: Algebra
    classification: Classification
    p1: PrincipleReport
    p2: PrincipleReport

    def to_dict(self) -> dict:
        return {"algebra": str(self.algebra),
                "classification": self.classification.to_dict(),
                "p1": self.p1.to_dict(), "p2": self.p2.to_dict()}


def census(n_max: int, n_vars: int = 1, depth: int = 3) -> list[CensusRow]:
    """Classify every finite chain with at most ``n_max`` elements and check both principles."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rows = []
    for n in range(2, n_max + 1):
        for alg in enumerate_finite_chains(n):
            c = classify_chain(alg)
            p1 = check_p1(alg, n_vars, depth)
            p2 = check_p2(alg, n_vars, depth)
            cross_validate(c, p1, p2)
            rows.append(CensusRow(alg, c, p1, p2))
    return rows
