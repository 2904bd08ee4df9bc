"""Exact polynomial, circuit and sign-condition tools.

Everything is computed over the integers and rationals; no floating point
is used anywhere.
"""

from .bss import AlgebraicCircuit, enumerate_tested_polynomials, eval_bss, executed_tests
from .circuit import ArithmeticCircuit, CircuitBuilder, Gate, eval_circuit, expand, extract_coefficient, formal_degree
from .errors import CapExceeded, FormatError, IncompleteTableError, OracleInconsistency
from .gf2 import find_halving_vector, star_sequence
from .macaulay import HomogeneousSystem, build_macaulay, det_exact, resultant_vanishing
from .pipeline import TestOracle, Transcript, TransferResult, transfer_decide
from .poly import Polynomial, format_poly, parse_poly
from .signs import SignConditionTable, enumerate_sign_conditions, sign_condition_of_point
from .textformat import dump_circuit, parse_circuit

__all__ = [
    "AlgebraicCircuit",
    "ArithmeticCircuit",
    "CapExceeded",
    "CircuitBuilder",
    "FormatError",
    "Gate",
    "HomogeneousSystem",
    "IncompleteTableError",
    "OracleInconsistency",
    "Polynomial",
    "SignConditionTable",
    "TestOracle",
    "Transcript",
    "TransferResult",
    "build_macaulay",
    "det_exact",
    "dump_circuit",
    "enumerate_sign_conditions",
    "enumerate_tested_polynomials",
    "eval_bss",
    "eval_circuit",
    "executed_tests",
    "expand",
    "extract_coefficient",
    "find_halving_vector",
    "format_poly",
    "formal_degree",
    "parse_circuit",
    "parse_poly",
    "resultant_vanishing",
    "sign_condition_of_point",
    "star_sequence",
    "transfer_decide",
]
