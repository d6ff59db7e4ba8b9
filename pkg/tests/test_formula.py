import pytest
from hypothesis import given, strategies as st

from tnormlogic.formula import (
    BOT,
    TOP,
    BasicLiteral,
    Bot,
    Conj,
    FormulaSyntaxError,
    Imp,
    Mult,
    Pow,
    Var,
    expand_basic_literal,
    format_literal,
    free_variables,
    multiple,
    parse_formula,
    parse_literal,
    power,
    render_formula,
)

X1, X2, X3 = Var(1), Var(2), Var(3)


def formulas(max_leaves=12):
    leaves = st.one_of(st.just(BOT), st.integers(1, 4).map(Var))
    return st.recursive(
        leaves,
        lambda kids: st.one_of(st.builds(Imp, kids, kids), st.builds(Conj, kids, kids)),
        max_leaves=max_leaves,
    )


# hand-written expansions of the abbreviations
def n(a):
    return Imp(a, Bot())


def w(a, b):
    return Conj(a, Imp(a, b))


def o(a, b):
    return n(Conj(n(a), n(b)))


class TestParse:
    def test_implication(self):
        assert parse_formula("X1 -> X2") == Imp(X1, X2)

    def test_negation(self):
        assert parse_formula("!X1") == Imp(X1, Bot())

    def test_wedge(self):
        assert parse_formula("X1 /\\ X2") == Conj(X1, Imp(X1, X2))

    def test_vee(self):
        expected = w(Imp(Imp(X1, X2), X2), Imp(Imp(X2, X1), X1))
        assert parse_formula("X1 \\/ X2") == expected

    def test_iff(self):
        assert parse_formula("X1 <-> X2") == Conj(Imp(X1, X2), Imp(X2, X1))

    def test_strong_disjunction(self):
        assert parse_formula("X1 (+) X2") == o(X1, X2)

    def test_constants(self):
        assert parse_formula("bot") == BOT
        assert parse_formula("top") == Imp(BOT, BOT) == TOP

    def test_implication_is_right_associative(self):
        assert parse_formula("X1 -> X2 -> X3") == Imp(X1, Imp(X2, X3))

    def test_precedence(self):
        # & binds tighter than ->, ! tighter than &
        assert parse_formula("!X1 & X2 -> X3") == Imp(Conj(n(X1), X2), X3)
        # ^ binds tighter than !
        assert parse_formula("!X1^2") == n(Conj(X1, X1))
        # <-> is loosest
        assert parse_formula("X1 -> X2 <-> X3") == parse_formula("(X1 -> X2) <-> X3")
        # (+) is looser than &
        assert parse_formula("X1 & X2 (+) X3") == o(Conj(X1, X2), X3)

    def test_multiple_and_power(self):
        assert parse_formula("2*X1") == o(X1, X1)
        assert parse_formula("X1^2") == Conj(X1, X1)
        assert parse_formula("1*X1") == X1
        assert parse_formula("X1^1") == X1
        assert parse_formula("3*X1") == o(o(X1, X1), X1)

    def test_whitespace_is_insignificant(self):
        assert parse_formula("  X1->X2 ") == parse_formula("X1 -> X2")

    @pytest.mark.parametrize("text, pos", [
        ("X1 ->", 5),
        ("X1 X2", 3),
        ("(X1", 3),
        ("X1 $ X2", 3),
        ("", 0),
    ])
    def test_syntax_errors_report_position(self, text, pos):
        with pytest.raises(FormulaSyntaxError) as err:
            parse_formula(text)
        assert err.value.position == pos

    @pytest.mark.parametrize("text", ["X0", "0*X1", "X1^0"])
    def test_zero_indices_and_counts_rejected(self, text):
        with pytest.raises(FormulaSyntaxError):
            parse_formula(text)


class TestRender:
    def test_examples(self):
        assert render_formula(Imp(X1, Bot())) == "(X1 -> bot)"
        assert render_formula(Conj(X1, X1)) == "(X1 & X1)"

    @given(formulas())
    def test_round_trip(self, f):
        assert parse_formula(render_formula(f)) == f

    @given(formulas())
    def test_render_normalises(self, f):
        text = render_formula(f)
        assert render_formula(parse_formula(text)) == text

    def test_render_of_parse_is_fully_parenthesised(self):
        assert render_formula(parse_formula("X1 & X2 -> X3")) == "((X1 & X2) -> X3)"


class TestLiterals:
    def test_bare_variable(self):
        assert expand_basic_literal(BasicLiteral(1)) == X1

    def test_power_two(self):
        assert expand_basic_literal(BasicLiteral(1, (Pow(2),))) == Conj(X1, X1)

    def test_multiple_then_power(self):
        two_x1 = n(Conj(n(X1), n(X1)))
        lit = BasicLiteral(1, (Mult(2), Pow(2)))
        assert expand_basic_literal(lit) == Conj(two_x1, two_x1)

    def test_step_bounds(self):
        with pytest.raises(ValueError):
            Pow(1)
        with pytest.raises(ValueError):
            Mult(0)
        Mult(1)

    def test_literal_has_one_variable(self):
        lit = BasicLiteral(2, (Mult(4), Pow(2)))
        assert free_variables(expand_basic_literal(lit)) == {2}

    def test_canonical_merges_runs(self):
        lit = BasicLiteral(1, (Mult(2), Mult(2), Pow(2), Pow(3), Mult(1)))
        assert lit.canonical() == BasicLiteral(1, (Mult(4), Pow(6)))

    def test_merged_multiple_of_powers_of_two_matches_iterated(self):
        # balanced bracketing: 4t is (2t) (+) (2t)
        assert multiple(4, X1) == multiple(2, multiple(2, X1))
        assert power(4, X1) == power(2, power(2, X1))

    def test_format_and_parse(self):
        assert format_literal(BasicLiteral(1, (Mult(2), Pow(3)))) == "(2,3)X1"
        assert format_literal(BasicLiteral(3, (Pow(2),))) == "(1,2)X3"
        assert format_literal(BasicLiteral(1)) == "X1"
        assert parse_literal("(2,3)X1") == BasicLiteral(1, (Mult(2), Pow(3)))
        assert parse_literal("X4") == BasicLiteral(4)

    @given(st.integers(1, 3), st.lists(st.tuples(st.booleans(), st.integers(2, 5)), max_size=5))
    def test_format_round_trips_to_canonical(self, var, raw):
        lit = BasicLiteral(var, tuple(Mult(k) if m else Pow(k) for m, k in raw))
        assert parse_literal(format_literal(lit)).canonical() == lit.canonical()

    def test_bad_literal(self):
        with pytest.raises(ValueError):
            parse_literal("(2,1)X1")
        with pytest.raises(ValueError):
            parse_literal("2X1")


class TestFreeVariables:
    def test_examples(self):
        assert free_variables(BOT) == set()
        assert free_variables(Imp(X3, X1)) == {1, 3}


def substitute(f, i, g):
    if isinstance(f, Var):
        return g if f.index == i else f
    if isinstance(f, Bot):
        return f
    return type(f)(substitute(f.left, i, g), substitute(f.right, i, g))


@given(formulas(6), formulas(6))
def test_desugaring_commutes_with_substitution(a, b):
    sa, sb = render_formula(a), render_formula(b)
    for template in ["!X1", "X1 /\\ X2", "X1 \\/ X2", "X1 <-> X2", "X1 (+) X2", "3*X1", "X2^3"]:
        parsed = parse_formula(template)
        filled = template.replace("X1", "{a}").replace("X2", "{b}").format(a=f"({sa})", b=f"({sb})")
        direct = parse_formula(filled)
        # substitute simultaneously via fresh indices
        via = substitute(substitute(parsed, 1, Var(101)), 2, Var(102))
        via = substitute(substitute(via, 101, a), 102, b)
        assert via == direct


def test_equality_and_hash_on_shared_terms():
    big = multiple(1 << 12, X1)
    again = multiple(1 << 12, Var(1))
    assert big == again and hash(big) == hash(again)
    assert big.variables == frozenset({1})
    assert big.depth > 12
