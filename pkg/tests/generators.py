"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from signtransfer.bss import AlgebraicCircuit
from signtransfer.boolean import BooleanCircuit
from signtransfer.circuit import ArithmeticCircuit, Gate
from signtransfer.poly import Polynomial


def random_poly(rng: random.Random, nvars: int, max_deg: int = 3, max_terms: int = 4, bound: int = 9) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            mono[rng.randrange(nvars)] += 1
        terms[tuple(mono)] = rng.randint(-bound, bound)
    return Polynomial(nvars, terms)


def random_dense(rng: random.Random, max_deg: int = 6, bound: int = 100) -> list[int]:
    """Dense univariate coefficients, not identically zero."""
    deg = rng.randint(0, max_deg)
    coeffs = [rng.randint(-bound, bound) for _ in range(deg + 1)]
    if not any(coeffs):
        coeffs[-1] = 1
    # sprinkle in easy rational roots so zeros of the system actually occur
    if deg >= 1 and rng.random() < 0.5:
        r = rng.randint(-3, 3)
        head = [rng.randint(-bound, bound) for _ in range(deg)]
        if not any(head):
            head[-1] = 1
        coeffs = [0] * (deg + 1)
        for i, c in enumerate(head):  # head * (x - r)
            coeffs[i + 1] += c
            coeffs[i] -= r * c
    return coeffs


def random_arith_circuit(rng: random.Random, nvars: int, size: int, consts: tuple[int, ...] = (1,)) -> ArithmeticCircuit:
    """Circuit with ``size`` gates in total (leaves included)."""
    gates: list[Gate] = [Gate("input", (), i) for i in range(nvars)]
    for k in consts:
        gates.append(Gate("const", (), k))
    gates = gates[:size] if size < len(gates) else gates
    while len(gates) < size:
        op = rng.choice(["add", "sub", "mul"])
        gates.append(Gate(op, (rng.randrange(len(gates)), rng.randrange(len(gates)))))
    return ArithmeticCircuit(nvars, tuple(gates), len(gates) - 1)


def random_bss_circuit(rng: random.Random, max_depth: int = 8, max_tests: int = 3) -> AlgebraicCircuit:
    """Univariate constant-free circuit with at most ``max_tests`` test gates."""
    gates: list[Gate] = [Gate("input", (), 0), Gate("const", (), 1)]
    level = [0, 0]
    ntests = rng.randint(1, max_tests)
    nops = rng.randint(2, 12)
    slots = sorted(rng.sample(range(nops), ntests - 1))
    for step in range(nops):
        pool = [g for g in range(len(gates)) if level[g] <= max_depth - 3]
        op = rng.choices(["add", "sub", "mul"], weights=[3, 3, 2])[0]
        # lean on recent gates so the circuit chains instead of staying flat
        a = pool[-1] if rng.random() < 0.6 else rng.choice(pool)
        b = rng.choice(pool)
        if op == "sub" and a == b:
            op = "add"
        gates.append(Gate(op, (a, b)))
        level.append(1 + max(level[a], level[b]))
        if step in slots:
            src = rng.choice([g for g in range(len(gates)) if gates[g].op != "test" and level[g] <= max_depth - 3])
            gates.append(Gate("test", (src,)))
            level.append(level[src] + 1)
    last = max(g for g in range(len(gates)) if gates[g].op in ("add", "sub", "mul") and level[g] < max_depth)
    gates.append(Gate("test", (last,)))
    level.append(level[last] + 1)
    assert max(level) <= max_depth
    return AlgebraicCircuit(1, tuple(gates), len(gates) - 1)


def random_rationals(rng: random.Random, count: int) -> list[Fraction]:
    """Small rationals biased toward integers, where constant-free circuits vanish."""
    out = []
    for _ in range(count):
        if rng.random() < 0.5:
            out.append(Fraction(rng.randint(-4, 4)))
        else:
            out.append(Fraction(rng.randint(-12, 12), rng.randint(1, 5)))
    return out


def random_boolean_circuit(rng: random.Random, nvars: int, ngates: int) -> BooleanCircuit:
    gates: list[Gate] = [Gate("input", (), i) for i in range(nvars)]
    for _ in range(ngates):
        op = rng.choice(["not", "and", "or"])
        n = len(gates)
        args = (rng.randrange(n),) if op == "not" else (rng.randrange(n), rng.randrange(n))
        gates.append(Gate(op, args))
    return BooleanCircuit(nvars, tuple(gates), len(gates) - 1)
