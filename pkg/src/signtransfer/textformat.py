"""Line-based circuit files.

::

    # x^2 - 2
    ninputs 1
    g1 = input 1
    g2 = mul g1 g1
    g3 = const 2
    g4 = sub g2 g3
    output g4

Gate ids must increase strictly and references point backward.  Inputs are
numbered from 1.  ``const k`` for k != 1 is expanded on load into gates built
from the constant 1 unless ``expand_constants=False``.  A file containing a
``test`` gate loads as an :class:`AlgebraicCircuit`.
"""

from __future__ import annotations

import re

from .bss import AlgebraicCircuit
from .boolean import BOOL_ARITY, BooleanCircuit
from .circuit import ArithmeticCircuit, CircuitBuilder, Gate
from .errors import FormatError

_GATE = re.compile(r"^g(\d+)\s*=\s*(\w+)(.*)$")
_ARITH_ARITY = {"input": 0, "const": 0, "add": 2, "sub": 2, "mul": 2, "test": 1}


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_generic(text: str, arities: dict[str, int]):
    nvars = None
    output = None
    gates: list[tuple[int, str, list[str], int]] = []
    last_id = 0
    for lineno, line in _lines(text):
        if output is not None:
            raise FormatError("content after 'output' line", lineno)
        if line.startswith("ninputs"):
            parts = line.split()
            if nvars is not None or len(parts) != 2 or not parts[1].isdigit():
                raise FormatError("expected a single 'ninputs K' line", lineno)
            nvars = int(parts[1])
            continue
        if line.startswith("output"):
            parts = line.split()
            if len(parts) != 2 or not re.fullmatch(r"g\d+", parts[1]):
                raise FormatError("expected 'output gN'", lineno)
            output = (int(parts[1][1:]), lineno)
            continue
        if nvars is None:
            raise FormatError("'ninputs K' must come first", lineno)
        m = _GATE.match(line)
        if not m:
            raise FormatError(f"cannot parse gate line {line!r}", lineno)
        gid, op, rest = int(m.group(1)), m.group(2), m.group(3).split()
        if op not in arities:
            raise FormatError(f"unknown gate kind {op!r}", lineno)
        if gid <= last_id:
            raise FormatError(f"gate ids must increase strictly (g{gid} after g{last_id})", lineno)
        last_id = gid
        expected = arities[op]
        if op in ("input", "const"):
            if len(rest) != 1:
                raise FormatError(f"{op} takes one integer", lineno)
        elif len(rest) != expected:
            raise FormatError(f"{op} takes {expected} gate references", lineno)
        gates.append((gid, op, rest, lineno))
    if nvars is None:
        raise FormatError("missing 'ninputs' line")
    if output is None:
        raise FormatError("missing 'output' line")
    return nvars, gates, output


def _ref(token: str, pos: dict[int, int], lineno: int) -> int:
    if not re.fullmatch(r"g\d+", token):
        raise FormatError(f"bad gate reference {token!r}", lineno)
    gid = int(token[1:])
    if gid not in pos:
        raise FormatError(f"reference to undefined or later gate {token}", lineno)
    return pos[gid]


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected an integer, got {token!r}", lineno) from None


def parse_circuit(text: str, expand_constants: bool = True) -> ArithmeticCircuit:
    nvars, lines, (out_id, out_line) = _parse_generic(text, _ARITH_ARITY)
    b = CircuitBuilder(nvars)
    pos: dict[int, int] = {}
    has_test = False
    for gid, op, rest, lineno in lines:
        if op == "input":
            idx = _int(rest[0], lineno)
            if not 1 <= idx <= nvars:
                raise FormatError(f"input index {idx} out of range 1..{nvars}", lineno)
            pos[gid] = b._push(Gate("input", (), idx - 1))
        elif op == "const":
            k = _int(rest[0], lineno)
            pos[gid] = b.const(k) if expand_constants else b._push(Gate("const", (), k))
        else:
            args = tuple(_ref(t, pos, lineno) for t in rest)
            has_test |= op == "test"
            pos[gid] = b._push(Gate(op, args))
    if out_id not in pos:
        raise FormatError(f"output gate g{out_id} is not defined", out_line)
    cls = AlgebraicCircuit if has_test else ArithmeticCircuit
    try:
        return b.build(pos[out_id], cls)
    except ValueError as exc:
        raise FormatError(str(exc), out_line) from None


def dump_circuit(c: ArithmeticCircuit) -> str:
    lines = [f"ninputs {c.nvars}"]
    for gid, g in enumerate(c.gates):
        lines.append(f"g{gid + 1} = {g}")
    lines.append(f"output g{c.output + 1}")
    return "\n".join(lines) + "\n"


def parse_boolean_circuit(text: str) -> BooleanCircuit:
    nvars, lines, (out_id, out_line) = _parse_generic(text, BOOL_ARITY)
    gates: list[Gate] = []
    pos: dict[int, int] = {}
    for gid, op, rest, lineno in lines:
        if op == "input":
            idx = _int(rest[0], lineno)
            if not 1 <= idx <= nvars:
                raise FormatError(f"input index {idx} out of range 1..{nvars}", lineno)
            gates.append(Gate("input", (), idx - 1))
        else:
            gates.append(Gate(op, tuple(_ref(t, pos, lineno) for t in rest)))
        pos[gid] = len(gates) - 1
    if out_id not in pos:
        raise FormatError(f"output gate g{out_id} is not defined", out_line)
    return BooleanCircuit(nvars, tuple(gates), pos[out_id])
