import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tnormlogic.algebra import (
    GQ,
    MVQ,
    PQ,
    TOP,
    Algebra,
    AlgebraError,
    AxiomViolation,
    CancellativeHoop,
    ChainTable,
    FiniteMV,
    InfiniteAlgebraError,
    RationalGodelHoop,
    TruthValue,
    check_bl_axioms,
    decompose_finite_chain,
    elements,
    enumerate_finite_chains,
    format_truth_value,
    from_sizes,
    idempotents,
    is_godel_chain,
    is_mv_chain,
    parse_algebra,
    parse_truth_value,
    residuum_apply,
    subalgebra_generated,
    tnorm_apply,
)

THREE = from_sizes([1, 1])  # 0 < e < 1
BOT3 = TruthValue(0, F(0))
E = TruthValue(1, F(0))


def unit_rationals(lo_open=False):
    return st.fractions(min_value=0, max_value=1, max_denominator=60).filter(
        lambda x: x > 0 or not lo_open)


class TestOperations:
    def test_lukasiewicz_tnorm(self):
        a, b = MVQ.from_rational(F(7, 10)), MVQ.from_rational(F(1, 2))
        assert MVQ.to_rational(tnorm_apply(MVQ, a, b)) == F(1, 5)

    def test_top_is_neutral(self):
        for alg in (MVQ, PQ, GQ, THREE):
            b = alg.from_rational(0) if alg is not THREE else E
            assert tnorm_apply(alg, TOP, b) == b

    def test_idempotent_in_three_chain(self):
        assert tnorm_apply(THREE, E, E) == E

    def test_lukasiewicz_residuum(self):
        a, b = MVQ.from_rational(F(7, 10)), MVQ.from_rational(F(1, 2))
        assert MVQ.to_rational(residuum_apply(MVQ, a, b)) == F(4, 5)

    def test_product_residuum(self):
        a, b = PQ.from_rational(F(2, 3)), PQ.from_rational(F(1, 3))
        assert PQ.to_rational(residuum_apply(PQ, a, b)) == F(1, 2)

    def test_godel_residuum(self):
        a, b = GQ.from_rational(F(4, 5)), GQ.from_rational(F(3, 10))
        assert GQ.to_rational(residuum_apply(GQ, a, b)) == F(3, 10)

    def test_carrier_errors(self):
        with pytest.raises(AlgebraError):
            tnorm_apply(from_sizes([3]), TruthValue(0, F(1, 2)), TOP)
        with pytest.raises(AlgebraError):
            from_sizes([3]).from_rational(F(1, 2))
        with pytest.raises(AlgebraError):
            PQ.check(TruthValue(0, F(1, 2)))

    def test_cross_summand_rows(self):
        alg = from_sizes([2, 2])
        low, high = TruthValue(0, F(1, 2)), TruthValue(1, F(1, 2))
        assert alg.tnorm(low, high) == low
        assert alg.residuum(high, low) == low
        assert alg.residuum(low, high) == TOP


class TestClosedForms:
    @given(unit_rationals(), unit_rationals())
    def test_mvq(self, x, y):
        a, b = MVQ.from_rational(x), MVQ.from_rational(y)
        assert MVQ.to_rational(MVQ.tnorm(a, b)) == max(F(0), x + y - 1)
        assert MVQ.to_rational(MVQ.residuum(a, b)) == min(F(1), 1 - x + y)

    @given(unit_rationals(), unit_rationals())
    def test_gq(self, x, y):
        a, b = GQ.from_rational(x), GQ.from_rational(y)
        assert GQ.to_rational(GQ.tnorm(a, b)) == min(x, y)
        assert GQ.to_rational(GQ.residuum(a, b)) == (1 if x <= y else y)

    @given(unit_rationals(lo_open=True), unit_rationals(lo_open=True))
    def test_pq(self, x, y):
        a, b = PQ.from_rational(x), PQ.from_rational(y)
        assert PQ.to_rational(PQ.tnorm(a, b)) == x * y
        assert PQ.to_rational(PQ.residuum(a, b)) == min(F(1), y / x)

    def test_pq_zero(self):
        z, h = PQ.from_rational(0), PQ.from_rational(F(1, 2))
        assert PQ.tnorm(z, h) == z
        assert PQ.residuum(h, z) == z
        assert PQ.neg(h) == z


class TestElements:
    def test_examples(self):
        assert [format_truth_value(from_sizes([2]), a) for a in elements(from_sizes([2]))] == \
            ["bot", "1/2", "top"]
        assert elements(THREE) == [BOT3, E, TOP]
        assert len(elements(from_sizes([2, 1]))) == 4

    def test_increasing(self):
        els = elements(from_sizes([3, 1, 2]))
        assert els == sorted(els) and len(set(els)) == len(els) == 7

    def test_infinite_rejected(self):
        with pytest.raises(InfiniteAlgebraError):
            elements(PQ)
        with pytest.raises(InfiniteAlgebraError):
            idempotents(MVQ)


class TestStructure:
    def test_idempotents(self):
        assert idempotents(from_sizes([2])) == [TruthValue(0, F(0)), TOP]
        assert idempotents(THREE) == [BOT3, E, TOP]
        assert idempotents(from_sizes([1])) == [TruthValue(0, F(0)), TOP]

    def test_mv_and_godel(self):
        assert is_mv_chain(from_sizes([4]))
        assert not is_mv_chain(THREE)
        assert THREE.neg(THREE.neg(E)) == TOP
        assert is_mv_chain(from_sizes([1]))
        assert is_godel_chain(THREE)
        assert not is_godel_chain(from_sizes([2]))
        assert is_godel_chain(from_sizes([1]))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_criteria_match_decomposition(self, n):
        for alg in enumerate_finite_chains(n):
            sizes = decompose_finite_chain(alg)
            assert is_mv_chain(alg) == (len(sizes) == 1)
            assert is_godel_chain(alg) == all(s == FiniteMV(1) for s in alg.summands)
            if len(alg.summands) >= 2:
                assert any(a not in (alg.bottom, TOP) for a in idempotents(alg))

    def test_subalgebra(self):
        assert subalgebra_generated(THREE, {E}) == [BOT3, E, TOP]
        t4 = from_sizes([4])
        assert subalgebra_generated(t4, {TruthValue(0, F(2, 4))}) == \
            [TruthValue(0, F(0)), TruthValue(0, F(1, 2)), TOP]
        assert subalgebra_generated(t4, set()) == [TruthValue(0, F(0)), TOP]
        with pytest.raises(AlgebraError):
            subalgebra_generated(t4, {TruthValue(0, F(1, 3))})

    def test_subalgebra_is_closed_chain(self):
        alg = from_sizes([4, 2])
        sub = subalgebra_generated(alg, {TruthValue(0, F(1, 2)), TruthValue(1, F(0))})
        for a in sub:
            for b in sub:
                assert alg.tnorm(a, b) in sub and alg.residuum(a, b) in sub


class TestEnumeration:
    def test_counts(self):
        assert [str(a) for a in enumerate_finite_chains(2)] == ["2"]
        assert {tuple(s.m for s in a.summands) for a in enumerate_finite_chains(3)} == {(2,), (1, 1)}
        for n in range(2, 9):
            chains = enumerate_finite_chains(n)
            assert len(chains) == 2 ** (n - 2)
            assert all(len(elements(c)) == n for c in chains)
            # pairwise non-isomorphic: decompositions differ
            assert len({tuple(decompose_finite_chain(c)) for c in chains}) == len(chains)

    def test_too_small(self):
        with pytest.raises(AlgebraError):
            enumerate_finite_chains(1)


# four-element chain MV[2] (+) 2, written out by hand: 0 < a < e < 1
HAND_TNORM = [
    [0, 0, 0, 0],
    [0, 0, 1, 1],
    [0, 1, 2, 2],
    [0, 1, 2, 3],
]
HAND_RESIDUUM = [
    [3, 3, 3, 3],
    [1, 3, 3, 3],
    [0, 1, 3, 3],
    [0, 1, 2, 3],
]


class TestDecompose:
    def test_examples(self):
        assert decompose_finite_chain(from_sizes([2])) == [2]
        assert decompose_finite_chain(THREE) == [1, 1]
        assert decompose_finite_chain(ChainTable(HAND_TNORM, HAND_RESIDUUM)) == [2, 1]

    def test_table_matches_hand_computation(self):
        assert from_sizes([2, 1]).table() == ChainTable(HAND_TNORM, HAND_RESIDUUM)

    @given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
    def test_round_trip(self, sizes):
        assert decompose_finite_chain(from_sizes(sizes)) == sizes
        assert decompose_finite_chain(from_sizes(sizes).table()) == sizes

    def test_json_round_trip(self):
        table = from_sizes([2, 1]).table()
        assert ChainTable.from_json(json.loads(json.dumps(table.to_json()))) == table

    def test_non_commutative_table_rejected(self):
        tn = [row[:] for row in HAND_TNORM]
        tn[2][1] = 0
        with pytest.raises(AxiomViolation) as err:
            decompose_finite_chain(ChainTable(tn, HAND_RESIDUUM))
        assert err.value.axiom == "commutativity"
        assert err.value.witness == (1, 2)

    def test_bad_residuum_rejected(self):
        rs = [row[:] for row in HAND_RESIDUUM]
        rs[1][0] = 0  # a -> 0 should be a
        with pytest.raises(AxiomViolation):
            decompose_finite_chain(ChainTable(HAND_TNORM, rs))

    def test_malformed_table(self):
        with pytest.raises(AlgebraError):
            ChainTable([[0]], [[0]])
        with pytest.raises(AlgebraError):
            ChainTable([[0, 5], [0, 1]], [[1, 1], [0, 1]])


@pytest.mark.parametrize("n", range(2, 6))
def test_axioms_hold_on_all_small_chains(n):
    for alg in enumerate_finite_chains(n):
        check_bl_axioms(alg.table())


class TestDescriptors:
    @pytest.mark.parametrize("text, expected", [
        ("MV[3]", Algebra((FiniteMV(3),))),
        ("2", Algebra((FiniteMV(1),))),
        ("MV[1] (+) MV[1]", THREE),
        ("2 (+) C", PQ),
        ("PQ", PQ),
        ("MVQ", MVQ),
        ("GQ", GQ),
        ("2 (+) GHQ", Algebra((FiniteMV(1), RationalGodelHoop()))),
        ("2 (+) C (+) C", Algebra((FiniteMV(1), CancellativeHoop(), CancellativeHoop()))),
    ])
    def test_parse(self, text, expected):
        assert parse_algebra(text) == expected

    def test_aliases_print(self):
        assert str(parse_algebra("2 (+) C")) == "PQ"
        assert str(parse_algebra("MV[2] (+) MV[1]")) == "MV[2] (+) 2"

    @pytest.mark.parametrize("text", ["", "MV[0]", "C", "C (+) 2", "MV[2] (+)", "XYZ"])
    def test_bad_descriptors(self, text):
        with pytest.raises(AlgebraError):
            parse_algebra(text)

    @given(st.lists(st.sampled_from(["MV[1]", "MV[2]", "MV[5]", "C", "GHQ", "MVQ"]), max_size=3))
    def test_print_parse_round_trip(self, rest):
        alg = parse_algebra(" (+) ".join(["MV[3]"] + rest))
        assert parse_algebra(str(alg)) == alg

    def test_truth_values(self):
        assert parse_truth_value(THREE, "bot") == BOT3
        assert parse_truth_value(THREE, "top") == TOP
        assert parse_truth_value(THREE, "1:0") == E
        assert parse_truth_value(PQ, "1/2") == TruthValue(1, F(1, 2))
        assert format_truth_value(THREE, E) == "1:0"
        assert format_truth_value(PQ, TruthValue(1, F(1, 2))) == "1/2"
        with pytest.raises(AlgebraError):
            parse_truth_value(from_sizes([2, 2]), "1/2")  # ambiguous
        with pytest.raises(AlgebraError):
            parse_truth_value(THREE, "1/2")

    @pytest.mark.parametrize("desc", ["MV[3] (+) MV[2]", "2 (+) C (+) MV[2]", "GQ", "MVQ"])
    def test_truth_value_round_trip(self, desc):
        alg = parse_algebra(desc)
        samples = alg.elements() if alg.is_finite else [
            alg.from_rational(F(1, 3)), alg.bottom, TOP]
        for a in samples:
            assert parse_truth_value(alg, format_truth_value(alg, a)) == a
