"""Algebraic circuits with ``<= 0?`` test gates.

A test gate outputs 1 when its entry is <= 0 and 0 when it is > 0; the output
gate must be a test gate.  Test outputs may feed arithmetic gates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .circuit import DEFAULT_EXPAND_CAP, LEAF_OPS, ArithmeticCircuit, CircuitBuilder, Gate
from .errors import CapExceeded
from .poly import Number, Polynomial

DEFAULT_MAX_TESTS = 12


@dataclass(frozen=True)
class AlgebraicCircuit(ArithmeticCircuit):
    allowed_ops = ArithmeticCircuit.allowed_ops | {"test"}

    def __post_init__(self):
        super().__post_init__()
        if self.gates[self.output].op != "test":
            raise ValueError("output gate of an algebraic circuit must be a test gate")

    def test_gates(self) -> list[int]:
        return [k for k, g in enumerate(self.gates) if g.op == "test"]


def _test(value) -> int:
    return 1 if value <= 0 else 0


def eval_bss(c: AlgebraicCircuit, x: Sequence[Number]) -> int:
    """Decision of ``c`` at ``x`` under exact arithmetic."""
    if len(x) != c.nvars:
        raise ValueError(f"circuit has {c.nvars} inputs, got {len(x)} values")
    xs = [Fraction(v) for v in x]
    vals: list[Fraction | int] = []
    for g in c.gates:
        if g.op == "input":
            vals.append(xs[g.value])
        elif g.op == "const":
            vals.append(g.value)
        elif g.op == "test":
            vals.append(_test(vals[g.args[0]]))
        else:
            a, b = vals[g.args[0]], vals[g.args[1]]
            vals.append(a + b if g.op == "add" else a - b if g.op == "sub" else a * b)
    return vals[c.output]


def _gate_polys(
    c: ArithmeticCircuit,
    outcome: Callable[[int, Polynomial], int],
    upto: Sequence[int] | None = None,
) -> dict[int, Polynomial]:
    """Polynomials of gates, test gates replaced by ``outcome(gid, entry)``."""
    n = c.nvars
    polys: dict[int, Polynomial] = {}
    order = range(len(c.gates)) if upto is None else upto
    for gid in order:
        g = c.gates[gid]
        if g.op == "input":
            p = Polynomial.var(n, g.value)
        elif g.op == "const":
            p = Polynomial.constant(n, g.value)
        elif g.op == "test":
            p = Polynomial.constant(n, outcome(gid, polys[g.args[0]]))
        else:
            a, b = polys[g.args[0]], polys[g.args[1]]
            p = a + b if g.op == "add" else a - b if g.op == "sub" else a * b
        polys[gid] = p
    return polys


def executed_tests(c: AlgebraicCircuit, x: Sequence[Number]) -> list[tuple[int, Polynomial, int]]:
    """Instrumented run: (test gate, tested polynomial, outcome) for every test."""
    if len(x) != c.nvars:
        raise ValueError(f"circuit has {c.nvars} inputs, got {len(x)} values")
    log: list[tuple[int, Polynomial, int]] = []

    def outcome(gid: int, entry: Polynomial) -> int:
        t = _test(entry.evaluate(x))
        log.append((gid, entry, t))
        return t

    _gate_polys(c, outcome)
    return log


def gate_levels(c: ArithmeticCircuit) -> list[int]:
    lv: list[int] = []
    for g in c.gates:
        lv.append(0 if g.op in LEAF_OPS else 1 + max(lv[a] for a in g.args))
    return lv


def slice_levels(c: ArithmeticCircuit) -> list[list[int]]:
    """Gate ids grouped by level (longest path from a leaf)."""
    lv = gate_levels(c)
    out: list[list[int]] = [[] for _ in range(max(lv) + 1)]
    for gid, level in enumerate(lv):
        out[level].append(gid)
    return out


@dataclass
class TestedPolynomials:
    """Ordered, duplicate-free list of every polynomial a test can see."""

    polys: list[Polynomial]
    scenarios_processed: int = 0

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, k):
        return self.polys[k]

    def index(self, p: Polynomial) -> int:
        return self.polys.index(p)


def _satisfiable(constraints: list[tuple[Polynomial, int]]) -> bool:
    from .signs import enumerate_sign_conditions

    if not constraints:
        return True
    system = [p for p, _ in constraints]
    table = enumerate_sign_conditions(system)
    for cond in table.conditions:
        if all((s <= 0) == bool(t) for s, (_, t) in zip(cond, constraints)):
            return True
    return False


def enumerate_tested_polynomials(
    c: AlgebraicCircuit,
    prune: bool = False,
    max_tests: int = DEFAULT_MAX_TESTS,
    cap: int = DEFAULT_EXPAND_CAP,
) -> TestedPolynomials:
    """Every polynomial fed to a test gate in some execution of ``c``.

    Levels are processed in order.  A scenario fixes the outcomes of all test
    gates on lower levels (tests ordered by level then gate id, enumerated in
    binary counting order); under each scenario the entries of this level's
    tests are computed symbolically.  Duplicates keep their first position.

    With ``prune`` (univariate circuits only) scenarios whose outcome
    combination no real point realizes are dropped.
    """
    tests = c.test_gates()
    if len(tests) > max_tests:
        raise CapExceeded("number of test gates", max_tests, "--max-tests")
    levels = slice_levels(c)
    lv = gate_levels(c)
    do_prune = prune and c.nvars == 1
    seen: set[Polynomial] = set()
    out: list[Polynomial] = []
    processed = 0
    # each scenario: (outcomes by test gate, constraints for pruning)
    scenarios: list[tuple[dict[int, int], list[tuple[Polynomial, int]]]] = [({}, [])]
    for level, gids in enumerate(levels):
        level_tests = [g for g in gids if c.gates[g].op == "test"]
        if not level_tests:
            continue
        upto = [g for g in range(len(c.gates)) if lv[g] < level]
        nxt = []
        for fixed, cons in scenarios:
            processed += 1
            polys = _gate_polys(c, lambda gid, _e: fixed[gid], upto)
            entries = [polys[c.gates[t].args[0]] for t in level_tests]
            for p in entries:
                if len(p) > cap:
                    raise CapExceeded("polynomial expansion (terms)", cap, "--expand-cap")
                if p not in seen:
                    seen.add(p)
                    out.append(p)
            for bits in itertools.product((0, 1), repeat=len(level_tests)):
                new_cons = cons + list(zip(entries, bits))
                if do_prune and not _satisfiable(new_cons):
                    continue
                nf = dict(fixed)
                nf.update(zip(level_tests, bits))
                nxt.append((nf, new_cons))
        scenarios = nxt
    return TestedPolynomials(out, processed)


def constants_to_variables(c: AlgebraicCircuit) -> tuple[AlgebraicCircuit, dict[int, int]]:
    """Turn every constant other than 1 into a fresh trailing input.

    One variable per distinct value; the map sends the new 0-based input index
    to the constant it stands for.
    """
    values = [v for v in c.constants() if v != 1]
    binding = {c.nvars + k: v for k, v in enumerate(values)}
    slot = {v: idx for idx, v in binding.items()}
    gates = [Gate("input", (), slot[g.value]) if g.op == "const" and g.value in slot else g for g in c.gates]
    return type(c)(c.nvars + len(values), tuple(gates), c.output), binding


def bind_constants(c: AlgebraicCircuit, binding: dict[int, int]) -> AlgebraicCircuit:
    """Inverse of :func:`constants_to_variables`."""
    keep = c.nvars - len(binding)
    if sorted(binding) != list(range(keep, c.nvars)):
        raise ValueError("binding must cover exactly the trailing inputs")
    gates = [Gate("const", (), binding[g.value]) if g.op == "input" and g.value in binding else g for g in c.gates]
    return type(c)(keep, tuple(gates), c.output)


__all__ = [
    "AlgebraicCircuit",
    "CircuitBuilder",
    "TestedPolynomials",
    "bind_constants",
    "constants_to_variables",
    "enumerate_tested_polynomials",
    "eval_bss",
    "executed_tests",
    "gate_levels",
    "slice_levels",
]
