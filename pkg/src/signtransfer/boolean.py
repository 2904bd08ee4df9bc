"""Boolean circuits over {not, and, or} and their arithmetic simulation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuit import ArithmeticCircuit, CircuitBuilder, Gate

BOOL_ARITY = {"input": 0, "not": 1, "and": 2, "or": 2}


@dataclass(frozen=True)
class BooleanCircuit:
    nvars: int
    gates: tuple[Gate, ...]
    output: int

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for gid, g in enumerate(self.gates):
            if g.op not in BOOL_ARITY:
                raise ValueError(f"gate {gid + 1}: {g.op!r} is not a boolean operation")
            if len(g.args) != BOOL_ARITY[g.op]:
                raise ValueError(f"gate {gid + 1}: {g.op} takes {BOOL_ARITY[g.op]} arguments")
            if any(not 0 <= a < gid for a in g.args):
                raise ValueError(f"gate {gid + 1}: reference is not backward")
            if g.op == "input" and not 0 <= g.value < self.nvars:
                raise ValueError(f"gate {gid + 1}: input index out of range")
        if not 0 <= self.output < len(self.gates):
            raise ValueError("output gate out of range")

    @property
    def size(self) -> int:
        return len(self.gates)

    def evaluate(self, bits: Sequence[int]) -> int:
        if len(bits) != self.nvars:
            raise ValueError("arity mismatch")
        vals: list[bool] = []
        for g in self.gates:
            if g.op == "input":
                vals.append(bool(bits[g.value]))
            elif g.op == "not":
                vals.append(not vals[g.args[0]])
            elif g.op == "and":
                vals.append(vals[g.args[0]] and vals[g.args[1]])
            else:
                vals.append(vals[g.args[0]] or vals[g.args[1]])
        return int(vals[self.output])


def simulate_boolean(bc: BooleanCircuit) -> ArithmeticCircuit:
    """Arithmetize: not u -> 1-u, u and v -> uv, u or v -> u+v-uv.

    At most three arithmetic gates per boolean gate (the shared constant 1 is
    paid for by the first negation, which itself costs one gate).
    """
    b = CircuitBuilder(bc.nvars)
    mapping: list[int] = []
    for g in bc.gates:
        if g.op == "input":
            mapping.append(b._push(Gate("input", (), g.value)))
        elif g.op == "not":
            mapping.append(b.sub(b.one(), mapping[g.args[0]]))
        elif g.op == "and":
            mapping.append(b.mul(mapping[g.args[0]], mapping[g.args[1]]))
        else:
            u, v = mapping[g.args[0]], mapping[g.args[1]]
            mapping.append(b.sub(b.add(u, v), b.mul(u, v)))
    return b.build(mapping[bc.output])
