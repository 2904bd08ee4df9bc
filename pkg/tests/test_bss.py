import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import random_bss_circuit, random_rationals
from signtransfer.bss import (
    AlgebraicCircuit,
    bind_constants,
    constants_to_variables,
    enumerate_tested_polynomials,
    eval_bss,
    executed_tests,
    slice_levels,
)
from signtransfer.circuit import Gate
from signtransfer.errors import CapExceeded
from signtransfer.poly import parse_poly
from signtransfer.textformat import parse_circuit

GT1 = """
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


def bss(text) -> AlgebraicCircuit:
    c = parse_circuit(text)
    assert isinstance(c, AlgebraicCircuit)
    return c


def test_eval_examples():
    test_x_minus_1 = bss("ninputs 1\ng1 = input 1\ng2 = const 1\ng3 = sub g1 g2\ng4 = test g3\noutput g4\n")
    assert eval_bss(test_x_minus_1, [2]) == 0
    test_x = bss("ninputs 1\ng1 = input 1\ng2 = test g1\noutput g2\n")
    assert eval_bss(test_x, [0]) == 1
    x2p1 = bss("ninputs 1\ng1 = input 1\ng2 = mul g1 g1\ng3 = const 1\ng4 = add g2 g3\ng5 = test g4\noutput g5\n")
    for v in random_rationals(random.Random(1), 30):
        assert eval_bss(x2p1, [v]) == 0


def test_eval_demo_circuit():
    c = bss(GT1)
    assert [eval_bss(c, [v]) for v in (2, 1, Fraction(1, 2), Fraction(101, 100))] == [1, 0, 0, 1]
    with pytest.raises(ValueError):
        eval_bss(c, [1, 2])


def test_output_must_be_test_gate():
    with pytest.raises(ValueError):
        AlgebraicCircuit(1, (Gate("input", (), 0), Gate("test", (0,)), Gate("add", (0, 1))), 2)


def test_slice_levels_examples():
    assert slice_levels(bss("ninputs 1\ng1 = input 1\ng2 = test g1\noutput g2\n")) == [[0], [1]]
    sq = bss("ninputs 1\ng1 = input 1\ng2 = mul g1 g1\ng3 = test g2\noutput g3\n")
    assert slice_levels(sq) == [[0], [1], [2]]
    diamond = bss("ninputs 1\ng1 = input 1\ng2 = add g1 g1\ng3 = mul g1 g1\ng4 = sub g2 g3\ng5 = test g4\noutput g5\n")
    lv = slice_levels(diamond)
    assert lv[0] == [0] and sorted(lv[1]) == [1, 2] and lv[2] == [3]


def test_enumeration_examples():
    chain = bss("ninputs 1\ng1 = input 1\ng2 = test g1\ng3 = sub g1 g2\ng4 = test g3\noutput g4\n")
    assert enumerate_tested_polynomials(chain).polys == [parse_poly("x1"), parse_poly("x1 - 1")]
    indep = bss("ninputs 1\ng1 = input 1\ng2 = mul g1 g1\ng3 = test g1\ng4 = test g2\ng5 = add g3 g4\ng6 = test g5\noutput g6\n")
    got = enumerate_tested_polynomials(indep).polys
    assert got[:2] == [parse_poly("x1"), parse_poly("x1^2")]
    single = bss("ninputs 1\ng1 = input 1\ng2 = mul g1 g1\ng3 = test g2\noutput g3\n")
    assert enumerate_tested_polynomials(single).polys == [parse_poly("x1^2")]


def test_demo_tested_list():
    assert [str(p) for p in enumerate_tested_polynomials(bss(GT1))] == ["x1 - 1", "-1", "1"]


def test_test_gate_cap():
    lines = ["ninputs 1", "g1 = input 1"]
    for k in range(2, 16):
        lines.append(f"g{k} = test g{k - 1}")
    lines.append("output g15")
    with pytest.raises(CapExceeded, match="--max-tests"):
        enumerate_tested_polynomials(bss("\n".join(lines)), max_tests=12)


def test_pruning_drops_impossible_scenarios():
    # outcome (x <= 0, x - 1 > 0) is impossible, so one of the 4 final scenarios goes
    text = """
    ninputs 1
    g1 = input 1
    g2 = const 1
    g3 = sub g1 g2
    g4 = test g1
    g5 = test g3
    g6 = mul g4 g5
    g7 = add g6 g1
    g8 = test g7
    output g8
    """
    c = bss(text)
    full = enumerate_tested_polynomials(c)
    pruned = enumerate_tested_polynomials(c, prune=True)
    assert set(pruned.polys) <= set(full.polys)
    assert full.scenarios_processed == 1 + 2 + 4
    assert pruned.scenarios_processed == 1 + 2 + 3
    rng = random.Random(5)
    for v in random_rationals(rng, 50) + [Fraction(0), Fraction(1)]:
        for _, p, _ in executed_tests(c, [v]):
            assert p in pruned.polys


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_executed_tests_are_enumerated(seed):
    rng = random.Random(seed)
    c = random_bss_circuit(rng)
    listed = enumerate_tested_polynomials(c)
    pruned = enumerate_tested_polynomials(c, prune=True)
    assert listed.scenarios_processed <= 2 ** len(c.test_gates())
    for v in random_rationals(rng, 10):
        for _, p, _ in executed_tests(c, [v]):
            assert p in listed.polys
            assert p in pruned.polys


def test_enumeration_is_deterministic():
    rng = random.Random(8)
    for _ in range(20):
        c = random_bss_circuit(rng)
        assert enumerate_tested_polynomials(c).polys == enumerate_tested_polynomials(c).polys


def test_constants_to_variables():
    c = parse_circuit(
        "ninputs 1\ng1 = input 1\ng2 = const 5\ng3 = mul g1 g2\ng4 = const 1\ng5 = sub g3 g4\ng6 = test g5\noutput g6\n",
        expand_constants=False,
    )
    lifted, binding = constants_to_variables(c)
    assert lifted.nvars == 2 and binding == {1: 5}
    back = bind_constants(lifted, binding)
    for v in random_rationals(random.Random(2), 20):
        assert eval_bss(lifted, [v, 5]) == eval_bss(c, [v]) == eval_bss(back, [v])

    free = bss(GT1)
    same, empty = constants_to_variables(free)
    assert empty == {} and same == free
