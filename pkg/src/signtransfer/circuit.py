"""Arithmetic circuits (straight-line programs over +, -, *).

Gates are stored in topological order and referenced by position.  Leaves are
``input`` gates (0-based variable index in ``value``) and ``const`` gates.
The constant-free discipline allows only the constant 1; other integer
constants are accepted in the IR so that transformations which eliminate them
(mod-2 splitting, constants-to-variables) have something to work on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CapExceeded
from .poly import Monomial, Number, Polynomial

DEFAULT_EXPAND_CAP = 5000

LEAF_OPS = frozenset({"input", "const"})
BINARY_OPS = frozenset({"add", "sub", "mul"})


@dataclass(frozen=True)
class Gate:
    op: str
    args: tuple[int, ...] = ()
    value: int = 0

    def __str__(self) -> str:
        if self.op == "input":
            return f"input {self.value + 1}"
        if self.op == "const":
            return f"const {self.value}"
        return " ".join([self.op] + [f"g{a + 1}" for a in self.args])


@dataclass(frozen=True)
class ArithmeticCircuit:
    nvars: int
    gates: tuple[Gate, ...]
    output: int

    allowed_ops = LEAF_OPS | BINARY_OPS

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if not self.gates:
            raise ValueError("circuit has no gates")
        for gid, g in enumerate(self.gates):
            if g.op not in self.allowed_ops:
                raise ValueError(f"gate {gid + 1}: operation {g.op!r} not allowed in {type(self).__name__}")
            arity = 0 if g.op in LEAF_OPS else (1 if g.op == "test" else 2)
            if len(g.args) != arity:
                raise ValueError(f"gate {gid + 1}: {g.op} takes {arity} arguments")
            for a in g.args:
                if not 0 <= a < gid:
                    raise ValueError(f"gate {gid + 1}: reference to g{a + 1} is not backward")
            if g.op == "input" and not 0 <= g.value < self.nvars:
                raise ValueError(f"gate {gid + 1}: input index {g.value + 1} out of range")
        if not 0 <= self.output < len(self.gates):
            raise ValueError("output gate out of range")

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def size(self) -> int:
        return len(self.gates)

    def is_constant_free(self) -> bool:
        return all(g.value == 1 for g in self.gates if g.op == "const")

    def constants(self) -> list[int]:
        return sorted({g.value for g in self.gates if g.op == "const"})


class CircuitBuilder:
    """Incremental construction helper; returns gate positions."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.gates: list[Gate] = []
        self._inputs: dict[int, int] = {}
        self._one: int | None = None
        self._two: int | None = None

    def _push(self, gate: Gate) -> int:
        self.gates.append(gate)
        return len(self.gates) - 1

    def input(self, index: int) -> int:
        if index not in self._inputs:
            self._inputs[index] = self._push(Gate("input", (), index))
        return self._inputs[index]

    def one(self) -> int:
        if self._one is None:
            self._one = self._push(Gate("const", (), 1))
        return self._one

    def raw_const(self, value: int) -> int:
        """A single constant leaf with arbitrary value."""
        if value == 1:
            return self.one()
        return self._push(Gate("const", (), value))

    def add(self, a: int, b: int) -> int:
        return self._push(Gate("add", (a, b)))

    def sub(self, a: int, b: int) -> int:
        return self._push(Gate("sub", (a, b)))

    def mul(self, a: int, b: int) -> int:
        return self._push(Gate("mul", (a, b)))

    def test(self, a: int) -> int:
        return self._push(Gate("test", (a,)))

    def zero(self) -> int:
        one = self.one()
        return self.sub(one, one)

    def power(self, base: int, k: int) -> int:
        """base^k by repeated squaring; k >= 1."""
        if k < 1:
            raise ValueError("power needs k >= 1")
        result = None
        sq = base
        while True:
            if k & 1:
                result = sq if result is None else self.mul(result, sq)
            k >>= 1
            if not k:
                return result
            sq = self.mul(sq, sq)

    def const(self, value: int) -> int:
        """The integer ``value`` built from the constant 1 alone."""
        if value == 0:
            return self.zero()
        if value < 0:
            return self.sub(self.zero(), self.const(-value))
        if value == 1:
            return self.one()
        terms = [self.power_of_two(b) for b in range(value.bit_length()) if value >> b & 1]
        return self.balanced_sum(terms)

    def power_of_two(self, b: int) -> int:
        if b == 0:
            return self.one()
        if self._two is None:
            self._two = self.add(self.one(), self.one())
        return self.power(self._two, b)

    def balanced_sum(self, items: Sequence[int]) -> int:
        return self._balanced(list(items), self.add)

    def balanced_product(self, items: Sequence[int]) -> int:
        return self._balanced(list(items), self.mul)

    def _balanced(self, items: list[int], op) -> int:
        if not items:
            raise ValueError("empty combination")
        while len(items) > 1:
            nxt = [op(items[k], items[k + 1]) for k in range(0, len(items) - 1, 2)]
            if len(items) % 2:
                nxt.append(items[-1])
            items = nxt
        return items[0]

    def embed(self, circuit: ArithmeticCircuit, leaves: Sequence[int]) -> int:
        """Copy ``circuit`` with its input i wired to gate ``leaves[i]``."""
        mapping: list[int] = []
        for g in circuit.gates:
            if g.op == "input":
                mapping.append(leaves[g.value])
            elif g.op == "const":
                mapping.append(self.raw_const(g.value))
            else:
                mapping.append(self._push(Gate(g.op, tuple(mapping[a] for a in g.args))))
        return mapping[circuit.output]

    def build(self, output: int, cls=ArithmeticCircuit):
        return cls(self.nvars, tuple(self.gates), output)


def eval_circuit(c: ArithmeticCircuit, point: Sequence[Number], modulus: int | None = None):
    """Value of the output gate at ``point``.

    With ``modulus`` every gate value is reduced mod ``modulus`` and the point
    must be integral; the result is then an int residue.
    """
    if len(point) != c.nvars:
        raise ValueError(f"circuit has {c.nvars} inputs, got {len(point)} values")
    if modulus is not None:
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        xs = []
        for v in point:
            v = Fraction(v)
            if v.denominator != 1:
                raise ValueError("modular evaluation needs integer inputs")
            xs.append(v.numerator % modulus)
    else:
        xs = [Fraction(v) for v in point]
    vals: list = []
    for g in c.gates:
        if g.op == "input":
            v = xs[g.value]
        elif g.op == "const":
            v = g.value if modulus is None else g.value % modulus
        else:
            a, b = vals[g.args[0]], vals[g.args[1]]
            if g.op == "add":
                v = a + b
            elif g.op == "sub":
                v = a - b
            else:
                v = a * b
            if modulus is not None:
                v %= modulus
        vals.append(v)
    out = vals[c.output]
    return Fraction(out) if modulus is None else out


def gate_formal_degrees(c: ArithmeticCircuit) -> list[int]:
    degs: list[int] = []
    for g in c.gates:
        if g.op in LEAF_OPS:
            degs.append(1)
        elif g.op == "mul":
            degs.append(degs[g.args[0]] + degs[g.args[1]])
        else:
            degs.append(max(degs[a] for a in g.args))
    return degs


def formal_degree(c: ArithmeticCircuit) -> int:
    return gate_formal_degrees(c)[c.output]


def expand_gates(c: ArithmeticCircuit, cap: int = DEFAULT_EXPAND_CAP) -> list[Polynomial]:
    polys: list[Polynomial] = []
    for gid, g in enumerate(c.gates):
        if g.op == "input":
            p = Polynomial.var(c.nvars, g.value)
        elif g.op == "const":
            p = Polynomial.constant(c.nvars, g.value)
        else:
            a, b = polys[g.args[0]], polys[g.args[1]]
            if g.op == "add":
                p = a + b
            elif g.op == "sub":
                p = a - b
            else:
                if len(a) * len(b) > cap * cap:
                    raise CapExceeded("polynomial expansion (terms)", cap, "--expand-cap")
                p = a * b
        if len(p) > cap:
            raise CapExceeded("polynomial expansion (terms)", cap, "--expand-cap")
        polys.append(p)
    return polys


def expand(c: ArithmeticCircuit, cap: int = DEFAULT_EXPAND_CAP) -> Polynomial:
    """The polynomial computed by ``c``; raises CapExceeded past ``cap`` terms."""
    return expand_gates(c, cap)[c.output]


def _divisors(alpha: Monomial) -> list[Monomial]:
    return list(itertools.product(*(range(a + 1) for a in alpha)))


def extract_coefficient(c: ArithmeticCircuit, alpha: Sequence[int]) -> int:
    """Coefficient of x^alpha in the polynomial of ``c`` without expanding it.

    Each gate keeps only the coefficients of monomials dividing x^alpha whose
    degree does not exceed the gate's formal degree; a product gate combines
    its children by convolution over splittings beta + gamma.
    """
    alpha = tuple(alpha)
    if len(alpha) != c.nvars:
        raise ValueError(f"monomial has length {len(alpha)}, circuit has {c.nvars} inputs")
    fdeg = gate_formal_degrees(c)
    divs = _divisors(alpha)
    zero_mono = (0,) * c.nvars
    table: list[dict[Monomial, int]] = []
    for gid, g in enumerate(c.gates):
        if g.op == "input":
            mono = tuple(1 if k == g.value else 0 for k in range(c.nvars))
            coeffs = {mono: 1} if all(m <= a for m, a in zip(mono, alpha)) else {}
        elif g.op == "const":
            coeffs = {zero_mono: g.value} if g.value else {}
        elif g.op in ("add", "sub"):
            a, b = table[g.args[0]], table[g.args[1]]
            s = 1 if g.op == "add" else -1
            coeffs = dict(a)
            for m, v in b.items():
                coeffs[m] = coeffs.get(m, 0) + s * v
            coeffs = {m: v for m, v in coeffs.items() if v}
        else:
            a, b = table[g.args[0]], table[g.args[1]]
            da, db = fdeg[g.args[0]], fdeg[g.args[1]]
            coeffs = {}
            if a and b:
                for beta in divs:
                    if sum(beta) > fdeg[gid]:
                        continue
                    total = 0
                    for gamma, cg in a.items():
                        if any(x > y for x, y in zip(gamma, beta)) or sum(gamma) > da:
                            continue
                        rest = tuple(x - y for x, y in zip(beta, gamma))
                        if sum(rest) > db:
                            continue
                        cb = b.get(rest)
                        if cb:
                            total += cg * cb
                    if total:
                        coeffs[beta] = total
        table.append(coeffs)
    return table[c.output].get(alpha, 0)
