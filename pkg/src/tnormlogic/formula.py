"""Propositional formulas over the BL language.

The core syntax has four node kinds: ``Bot``, ``Var``, ``Imp`` and ``Conj``
(monoidal conjunction). Everything else (negation, lattice connectives,
strong disjunction, multiples and powers) is sugar that expands to core
nodes as soon as it is built or parsed.

Nodes are immutable and cache their hash, depth and variable set, so large
formulas that share subterms (for instance ``nX1`` for big ``n``) stay cheap
to hash, compare and fold over.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, TypeVar

__all__ = [
    "Formula", "Bot", "Var", "Imp", "Conj", "BOT", "TOP",
    "neg", "wedge", "vee", "iff", "oplus", "multiple", "power",
    "Step", "Mult", "Pow", "BasicLiteral",
    "FormulaSyntaxError", "parse_formula", "render_formula",
    "expand_basic_literal", "free_variables", "fold",
    "parse_literal", "format_literal",
]

T = TypeVar("T")


class Formula:
    __slots__ = ("_hash", "depth", "variables")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {render_formula(self)}>"

    def __str__(self) -> str:
        return render_formula(self)

    def __hash__(self) -> int:
        return self._hash


class Bot(Formula):
    __slots__ = ()

    def __init__(self) -> None:
        self._hash = hash(("bot",))
        self.depth = 0
        self.variables: frozenset[int] = frozenset()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Bot)

    __hash__ = Formula.__hash__


class Var(Formula):
    __slots__ = ("index",)

    def __init__(self, index: int) -> None:
        if not isinstance(index, int) or index < 1:
            raise ValueError(f"variable index must be a positive integer, got {index!r}")
        self.index = index
        self._hash = hash(("var", index))
        self.depth = 0
        self.variables = frozenset((index,))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Var) and other.index == self.index

    __hash__ = Formula.__hash__


class _Binary(Formula):
    __slots__ = ("left", "right")
    tag = ""

    def __init__(self, left: Formula, right: Formula) -> None:
        self.left = left
        self.right = right
        self._hash = hash((self.tag, left._hash, right._hash))
        self.depth = 1 + max(left.depth, right.depth)
        self.variables = left.variables | right.variables

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(other) is not type(self) or other._hash != self._hash:
            return False
        # iterative comparison; shared subterms short-circuit on identity
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(a) is not type(b) or a._hash != b._hash:
                return False
            if isinstance(a, _Binary):
                stack.append((a.left, b.left))
                stack.append((a.right, b.right))
            elif a != b:
                return False
        return True

    __hash__ = Formula.__hash__


class Imp(_Binary):
    __slots__ = ()
    tag = "imp"


class Conj(_Binary):
    __slots__ = ()
    tag = "conj"


BOT = Bot()
TOP = Imp(BOT, BOT)


def fold(
    f: Formula,
    bot: Callable[[], T],
    var: Callable[[int], T],
    imp: Callable[[T, T], T],
    conj: Callable[[T, T], T],
) -> T:
    """Bottom-up fold over ``f``, visiting each shared subterm once."""
    memo: dict[int, T] = {}
    keep = []  # keep nodes alive so their ids stay unique during the fold
    stack = [f]
    while stack:
        node = stack[-1]
        key = id(node)
        if key in memo:
            stack.pop()
            continue
        if isinstance(node, Bot):
            memo[key] = bot()
        elif isinstance(node, Var):
            memo[key] = var(node.index)
        else:
            lk, rk = id(node.left), id(node.right)
            if lk not in memo:
                stack.append(node.left)
                continue
            if rk not in memo:
                stack.append(node.right)
                continue
            op = imp if isinstance(node, Imp) else conj
            memo[key] = op(memo[lk], memo[rk])
        keep.append(node)
        stack.pop()
    return memo[id(f)]


# -- derived connectives ----------------------------------------------------

def neg(a: Formula) -> Formula:
    return Imp(a, BOT)


def wedge(a: Formula, b: Formula) -> Formula:
    return Conj(a, Imp(a, b))


def vee(a: Formula, b: Formula) -> Formula:
    return wedge(Imp(Imp(a, b), b), Imp(Imp(b, a), a))


def iff(a: Formula, b: Formula) -> Formula:
    return Conj(Imp(a, b), Imp(b, a))


def oplus(a: Formula, b: Formula) -> Formula:
    return neg(Conj(neg(a), neg(b)))


def _balanced(n: int, t: Formula, op: Callable[[Formula, Formula], Formula]) -> Formula:
    # n-1 applications of op, bracketed as a balanced tree so depth grows
    # like log(n) and halves are shared
    cache: dict[int, Formula] = {1: t}

    def build(k: int) -> Formula:
        if k not in cache:
            cache[k] = op(build((k + 1) // 2), build(k // 2))
        return cache[k]

    return build(n)


def multiple(n: int, t: Formula) -> Formula:
    """``n t``: the strong disjunction of ``n`` copies of ``t``."""
    if n < 1:
        raise ValueError(f"multiple count must be >= 1, got {n}")
    return _balanced(n, t, oplus)


def power(n: int, t: Formula) -> Formula:
    """``t^n``: the monoidal conjunction of ``n`` copies of ``t``."""
    if n < 1:
        raise ValueError(f"power exponent must be >= 1, got {n}")
    return _balanced(n, t, Conj)


def free_variables(f: Formula) -> set[int]:
    return set(f.variables)


# -- basic literals ---------------------------------------------------------

@dataclass(frozen=True)
class Mult:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"Mult step needs n >= 1, got {self.n}")

    def __call__(self, t: Formula) -> Formula:
        return multiple(self.n, t)


@dataclass(frozen=True)
class Pow:
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"Pow step needs n > 1, got {self.n}")

    def __call__(self, t: Formula) -> Formula:
        return power(self.n, t)


Step = Mult | Pow


@dataclass(frozen=True)
class BasicLiteral:
    """A single-variable term built from ``Mult``/``Pow`` steps, innermost first."""

    var: int
    steps: tuple[Step, ...] = ()

    def __post_init__(self) -> None:
        if self.var < 1:
            raise ValueError(f"variable index must be >= 1, got {self.var}")
        object.__setattr__(self, "steps", tuple(self.steps))

    def canonical(self) -> "BasicLiteral":
        """Merge runs of same-kind steps and drop ``Mult(1)``.

        ``m(n t)`` equals ``(mn) t`` and ``(t^m)^n`` equals ``t^(mn)``, so the
        canonical literal has the same term function.
        """
        merged: list[Step] = []
        for step in self.steps:
            if isinstance(step, Mult) and step.n == 1:
                continue
            if merged and type(merged[-1]) is type(step):
                merged[-1] = type(step)(merged[-1].n * step.n)
            else:
                merged.append(step)
        return BasicLiteral(self.var, tuple(merged))

    def __str__(self) -> str:
        return format_literal(self)


def expand_basic_literal(lit: BasicLiteral) -> Formula:
    f: Formula = Var(lit.var)
    for step in lit.steps:
        f = step(f)
    return f


_LITERAL_RE = re.compile(r"^\s*(?:\(\s*(\d+(?:\s*,\s*\d+)*)?\s*\))?\s*X(\d+)\s*$")


def format_literal(lit: BasicLiteral) -> str:
    """Alternating notation ``(n1,n2,...,nu)Xi``; ``n1`` is a multiple, ``n2`` a power, ..."""
    canon = lit.canonical()
    if not canon.steps:
        return f"X{lit.var}"
    counts: list[int] = []
    if isinstance(canon.steps[0], Pow):
        counts.append(1)
    counts.extend(step.n for step in canon.steps)
    return "(" + ",".join(map(str, counts)) + f")X{lit.var}"


def parse_literal(text: str) -> BasicLiteral:
    m = _LITERAL_RE.match(text)
    if not m:
        raise ValueError(f"not a basic literal: {text!r}")
    counts = [int(c) for c in m.group(1).split(",")] if m.group(1) else []
    steps: list[Step] = []
    for pos, n in enumerate(counts):
        if pos % 2 == 0:
            steps.append(Mult(n))
        else:
            steps.append(Pow(n))
    return BasicLiteral(int(m.group(2)), tuple(steps))


# -- surface syntax -----------------------------------------------------------

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = "") -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<var>X\d+)|(?P<num>\d+)|(?P<word>bot|top)"
    r"|(?P<op><->|->|\\/|/\\|\(\+\)|&|!|\*|\^|\(|\)))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # precedence, loosest first: <->, ->, \/, /\, (+), &, n*, !, ^
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str) -> FormulaSyntaxError:
        return FormulaSyntaxError(message, self.peek()[2], self.text)

    def accept(self, op: str) -> bool:
        kind, val, _ = self.peek()
        if kind == "op" and val == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.accept("<->"):
            f = iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.vee()
        if self.accept("->"):
            return Imp(f, self.imp())
        return f

    def _left_assoc(self, sub: Callable[[], Formula], op: str,
                    build: Callable[[Formula, Formula], Formula]) -> Formula:
        f = sub()
        while self.accept(op):
            f = build(f, sub())
        return f

    def vee(self) -> Formula:
        return self._left_assoc(self.wedge, "\\/", vee)

    def wedge(self) -> Formula:
        return self._left_assoc(self.oplus, "/\\", wedge)

    def oplus(self) -> Formula:
        return self._left_assoc(self.conj, "(+)", oplus)

    def conj(self) -> Formula:
        return self._left_assoc(self.mult, "&", Conj)

    def count(self) -> int:
        kind, val, pos = self.take()
        if kind != "num":
            self.i -= 1
            raise self.error("expected a count")
        n = int(val)
        if n < 1:
            raise FormulaSyntaxError("count must be at least 1", pos, self.text)
        return n

    def mult(self) -> Formula:
        if self.peek()[0] == "num":
            n = self.count()
            if not self.accept("*"):
                raise self.error("expected '*' after multiple count")
            return multiple(n, self.mult())
        return self.neg()

    def neg(self) -> Formula:
        if self.accept("!"):
            return neg(self.neg())
        return self.pow()

    def pow(self) -> Formula:
        f = self.atom()
        while self.accept("^"):
            f = power(self.count(), f)
        return f

    def atom(self) -> Formula:
        kind, val, pos = self.take()
        if kind == "var":
            index = int(val[1:])
            if index < 1:
                raise FormulaSyntaxError("variable index must be at least 1", pos, self.text)
            return Var(index)
        if kind == "word":
            return BOT if val == "bot" else TOP
        if kind == "op" and val == "(":
            f = self.iff()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return f
        self.i -= 1
        if kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {val!r}")


def parse_formula(text: str) -> Formula:
    """Parse surface syntax into a core formula, desugaring derived connectives.

    >>> render_formula(parse_formula("!X1"))
    '(X1 -> bot)'
    """
    return _Parser(text).parse()


def render_formula(f: Formula) -> str:
    return fold(
        f,
        lambda: "bot",
        lambda i: f"X{i}",
        lambda a, b: f"({a} -> {b})",
        lambda a, b: f"({a} & {b})",
    )


def variables_of(formulas: Iterable[Formula]) -> list[int]:
    out: set[int] = set()
    for f in formulas:
        out |= f.variables
    return sorted(out)
