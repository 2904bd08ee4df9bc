import inspect
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import random_bss_circuit, random_rationals
from signtransfer.bss import enumerate_tested_polynomials, eval_bss
from signtransfer.errors import IncompleteTableError, OracleInconsistency
from signtransfer.pipeline import (
    TestOracle,
    Transcript,
    full_condition_search,
    query_bound,
    recover_rank,
    replay_acceptance,
    transfer_decide,
    truncated_rank_search,
)
from signtransfer.poly import parse_poly
from signtransfer.signs import (
    compatible_view,
    enumerate_sign_conditions,
    sign_condition_of_point,
    truncate,
    truncated_table,
)
from signtransfer.textformat import parse_circuit

GT1 = parse_circuit(
    """
    ninputs 1
    g1 = input 1
    g2 = const 1
    g3 = sub g1 g2
    g4 = test g3
    g5 = add g4 g4
    g6 = sub g5 g2
    g7 = test g6
    output g7
    """
)
X = parse_poly("x1")
XM1 = parse_poly("x1 - 1")
TABLE_X = enumerate_sign_conditions([X])
TABLE_XX1 = enumerate_sign_conditions([X, XM1])


def answers(oracle):
    return [(q.kind, q.params, q.answer) for q in oracle.transcript.queries]


# -- truncated rank search -----------------------------------------------------------


def test_truncated_search_at_five():
    o = TestOracle(TABLE_X, [5])
    assert truncated_table(TABLE_X) == [(0,), (1,)]
    assert truncated_rank_search(o, TABLE_X) == 2
    assert answers(o) == [("truncated", {"i": 1}, 1), ("truncated", {"i": 2}, 0)]


def test_truncated_search_at_zero():
    o = TestOracle(TABLE_X, [0])
    assert truncated_rank_search(o, TABLE_X) == 1
    assert o.truncated(1) == 0


def test_single_truncated_condition_needs_no_query():
    t = enumerate_sign_conditions([parse_poly("x1^2 + 1")])
    o = TestOracle(t, [3])
    assert truncated_rank_search(o, t) == 1
    assert len(o.transcript) == 0


def test_empty_inner_sum_counts_as_zero():
    o = TestOracle(TABLE_XX1, [2])
    # T^(3) = (1,1) has no zero positions: its factor vanishes
    assert o.truncated(3) == 0
    assert o.truncated(2) == 1


# -- full condition search and rank recovery ---------------------------------------------


def test_full_search_at_two():
    o = TestOracle(TABLE_XX1, [2])
    view = compatible_view(TABLE_XX1, (1, 1))
    assert view.vectors == ((1, 1), (0, 1), (0, 0))
    c = full_condition_search(o, view, 3)
    assert c == [0]
    assert answers(o) == [("product", {"i": 1, "k": 3, "c": []}, 1)]
    assert recover_rank(c, view, TABLE_XX1) == 5


def test_full_search_at_one_half():
    o = TestOracle(TABLE_XX1, [Fraction(1, 2)])
    view = compatible_view(TABLE_XX1, (1, 1))
    c = full_condition_search(o, view, 3)
    assert c == [1, 0]
    assert [a for _, _, a in answers(o)] == [-1, 1]
    assert recover_rank(c, view, TABLE_XX1) == 3
    assert TABLE_XX1.condition(3) == (1, -1)


def test_single_compatible_condition():
    o = TestOracle(TABLE_XX1, [0])
    view = compatible_view(TABLE_XX1, (0, 1))
    assert full_condition_search(o, view, 1) == []
    assert len(o.transcript) == 0
    assert recover_rank([], view, TABLE_XX1) == 2


def test_recover_rank_rejects_bad_choices():
    view = compatible_view(TABLE_XX1, (1, 1))
    with pytest.raises((OracleInconsistency, ValueError)):
        recover_rank([1], view, TABLE_XX1)


def test_zero_product_is_an_inconsistency():
    # oracle at x = 0 asked about the all-nonzero view
    o = TestOracle(TABLE_XX1, [0])
    view = compatible_view(TABLE_XX1, (1, 1))
    with pytest.raises(OracleInconsistency):
        full_condition_search(o, view, 3)


# -- replay ----------------------------------------------------------------------


def test_replay_examples():
    tested = enumerate_tested_polynomials(GT1).polys
    assert [str(p) for p in tested] == ["x1 - 1", "-1", "1"]
    t = enumerate_sign_conditions(tested)
    assert replay_acceptance(GT1, t, t.rank((1, -1, 1))) == 1
    assert replay_acceptance(GT1, t, t.rank((-1, -1, 1))) == 0
    assert replay_acceptance(GT1, t, t.rank((0, -1, 1))) == 0


def test_replay_needs_tested_list():
    with pytest.raises(LookupError):
        replay_acceptance(GT1, TABLE_X, 1)


# -- end to end ----------------------------------------------------------------


@pytest.mark.parametrize("x,want", [(2, 1), (1, 0), (Fraction(1, 2), 0)])
def test_transfer_demo(x, want):
    r = transfer_decide(GT1, [x])
    assert r.decision == want == r.direct == eval_bss(GT1, [x])
    assert len(r.transcript) <= query_bound(r.truncated_size, r.compatible_size)


def test_query_bound_formula():
    assert query_bound(1, 1) == 0 + 3 * 1 + 4
    assert query_bound(3, 3) == 2 + 3 * 2 + 4
    assert query_bound(5, 8) == 3 + 3 * 4 + 4


def pipeline_pieces(c, x):
    tested = enumerate_tested_polynomials(c)
    table = enumerate_sign_conditions(tested.polys)
    return tested, table


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_oracle_equivalence_and_ranks(seed):
    rng = random.Random(seed)
    c = random_bss_circuit(rng)
    tested, table = pipeline_pieces(c, None)
    for x in random_rationals(rng, 6):
        r = transfer_decide(c, [x], table=table)
        assert r.decision == eval_bss(c, [x])
        direct = sign_condition_of_point(tested.polys, [x])
        assert table.condition(r.rank) == direct
        assert truncated_table(table)[r.truncated_rank - 1] == truncate(direct)
        assert len(r.transcript) <= r.query_bound()
        assert r.transcript.count("truncated") <= (len(truncated_table(table)) - 1).bit_length() + 1


def test_searches_see_only_the_oracle():
    for fn in (truncated_rank_search, full_condition_search, recover_rank, replay_acceptance):
        assert "x" not in inspect.signature(fn).parameters
    # an oracle for another point steers the searches to that point's rank
    for y in (Fraction(-3), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(7)):
        o = TestOracle(TABLE_XX1, [y])
        m = truncated_rank_search(o, TABLE_XX1)
        view = o.view(m)
        rank = recover_rank(full_condition_search(o, view, m), view, TABLE_XX1)
        assert TABLE_XX1.condition(rank) == sign_condition_of_point([X, XM1], [y])


def test_transcript_is_deterministic():
    a = transfer_decide(GT1, [Fraction(1, 2)]).transcript.to_lines()
    b = transfer_decide(GT1, [Fraction(1, 2)]).transcript.to_lines()
    assert a == b


def test_transcript_round_trip():
    t = transfer_decide(GT1, [Fraction(1, 2)]).transcript
    back = Transcript.from_lines(t.to_lines())
    assert back.queries == t.queries
    with pytest.raises(ValueError):
        Transcript.from_lines(['{"kind": "bogus", "params": {}, "answer": 1, "total": 1}'])


# -- incomplete and multivariate tables ----------------------------------------------


def test_incomplete_table_requires_override():
    tested = enumerate_tested_polynomials(GT1).polys
    partial = enumerate_sign_conditions(tested, backend="witness", points=[(2,), (0,)])
    with pytest.raises(IncompleteTableError):
        transfer_decide(GT1, [2], table=partial)
    assert transfer_decide(GT1, [2], table=partial, override=True).decision == 1


def test_missing_condition_aborts_instead_of_guessing():
    tested = enumerate_tested_polynomials(GT1).polys
    partial = enumerate_sign_conditions(tested, backend="witness", points=[(2,), (0,)])
    with pytest.raises(OracleInconsistency):
        transfer_decide(GT1, [1], table=partial, override=True)


def test_multivariate_needs_attested_table():
    c = parse_circuit(
        """
        ninputs 2
        g1 = input 1
        g2 = input 2
        g3 = test g1
        g4 = test g2
        g5 = add g3 g4
        g6 = const 1
        g7 = sub g5 g6
        g8 = test g7
        output g8
        """
    )
    with pytest.raises(IncompleteTableError):
        transfer_decide(c, [1, 1])
    tested = enumerate_tested_polynomials(c).polys
    grid = list(itertools.product((-1, 0, 1), repeat=2))
    table = enumerate_sign_conditions(tested, backend="witness", points=grid, attest_complete=True)
    for pt in grid + [(Fraction(1, 3), -5)]:
        r = transfer_decide(c, pt, table=table)
        assert r.decision == eval_bss(c, pt)


def test_table_must_match_circuit():
    with pytest.raises(ValueError):
        transfer_decide(GT1, [2], table=TABLE_X)
