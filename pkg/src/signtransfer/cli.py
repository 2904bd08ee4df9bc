"""Command-line front end (``signtransfer <command> ...``)."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from .bss import DEFAULT_MAX_TESTS, AlgebraicCircuit, enumerate_tested_polynomials, eval_bss
from .circuit import DEFAULT_EXPAND_CAP, eval_circuit, expand, extract_coefficient, formal_degree
from .boolean import simulate_boolean
from .errors import CapExceeded, FormatError, IncompleteTableError, OracleInconsistency
from .families import DEFAULT_FAMILY_CAP, hamilton_families
from .gf2 import DEFAULT_MAX_WIDTH
from .macaulay import build_macaulay, det_exact, parse_system, reduced_submatrix, resultant_vanishing
from .pipeline import transfer_decide
from .poly import Polynomial, format_poly, parse_poly
from .signs import describe_witness, enumerate_sign_conditions, sign_condition_of_point
from .textformat import dump_circuit, parse_boolean_circuit, parse_circuit
from .transforms import homogeneous_split_mod2

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(token: str) -> Fraction:
    token = token.strip()
    if not _RATIONAL.match(token):
        raise argparse.ArgumentTypeError(f"not an integer or p/q rational: {token!r}")
    value = Fraction(token)
    return value


def parse_rationals(tokens: Sequence[str]) -> list[Fraction]:
    out = []
    for tok in tokens:
        out.extend(parse_rational(t) for t in tok.split(",") if t.strip())
    return out


def fmt(value) -> str:
    return str(Fraction(value))


def fmt_cond(cond) -> str:
    return ",".join(str(s) for s in cond)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_circuit(path: str):
    return parse_circuit(_read(path))


def parse_poly_system(text: str, nvars: int | None = None) -> list[Polynomial]:
    """One polynomial per non-empty line; ``#`` starts a comment.

    All polynomials share the largest variable count found (or ``nvars``).
    """
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            raw.append((lineno, parse_poly(line, lineno=lineno)))
    if not raw:
        raise FormatError("system file has no polynomials")
    width = max(max(p.nvars for _, p in raw), 1)
    if nvars is not None:
        if nvars < width:
            raise FormatError(f"system uses {width} variables but --nvars is {nvars}")
        width = nvars
    return [parse_poly(format_poly(p), nvars=width, lineno=ln) for ln, p in raw]


def cmd_eval(args) -> list[str]:
    c = _load_circuit(args.circuit)
    x = parse_rationals(args.input)
    if isinstance(c, AlgebraicCircuit):
        return [str(eval_bss(c, x))]
    if args.mod is not None:
        return [str(eval_circuit(c, x, modulus=args.mod))]
    return [fmt(eval_circuit(c, x))]


def cmd_expand(args) -> list[str]:
    return [format_poly(expand(_load_circuit(args.circuit), cap=args.expand_cap))]


def cmd_coeff(args) -> list[str]:
    c = _load_circuit(args.circuit)
    alpha = [int(t) for t in args.monomial.split(",")]
    if len(alpha) != c.nvars:
        raise ValueError(f"monomial needs {c.nvars} exponents, got {len(alpha)}")
    return [str(extract_coefficient(c, alpha))]


def cmd_formal_degree(args) -> list[str]:
    return [str(formal_degree(_load_circuit(args.circuit)))]


def cmd_split_mod2(args) -> list[str]:
    out = homogeneous_split_mod2(_load_circuit(args.circuit), args.dmax)
    return dump_circuit(out).splitlines()


def cmd_simulate_bool(args) -> list[str]:
    bc = parse_boolean_circuit(_read(args.circuit))
    return dump_circuit(simulate_boolean(bc)).splitlines()


def cmd_family(args) -> list[str]:
    kind = {"hc": "cycles", "hp": "paths"}[args.kind]
    p = hamilton_families(args.n, kind, cap=args.max_n)
    if args.at_ones:
        return [fmt(p.evaluate([1] * p.nvars))]
    return [format_poly(p)]


def cmd_macaulay(args) -> list[str]:
    system = parse_system(_read(args.system))
    m = build_macaulay(system)
    dm = det_exact(m.matrix())
    dr = det_exact(reduced_submatrix(m))
    verdict = resultant_vanishing(system).verdict
    return [f"N = {m.size}", f"d = {m.d}", f"detM = {dm}", f"detM' = {dr}", f"verdict = {verdict}"]


def cmd_resultant(args) -> list[str]:
    v = resultant_vanishing(parse_system(_read(args.system)))
    return [f"detM = {v.det_m}", f"detM' = {v.det_m_reduced}", f"verdict = {v.verdict}"]


def cmd_signcond(args) -> list[str]:
    system = parse_poly_system(_read(args.system), args.nvars)
    if args.action == "of-point":
        if not args.point:
            raise ValueError("of-point needs --point")
        return [fmt_cond(sign_condition_of_point(system, parse_rationals(args.point)))]
    if args.points:
        pts = [parse_rationals([line]) for line in _read(args.points).splitlines() if line.split("#")[0].strip()]
        table = enumerate_sign_conditions(system, backend="witness", points=pts, attest_complete=args.attest_complete)
    else:
        table = enumerate_sign_conditions(system)
    lines = [f"{rank}: {fmt_cond(cond)} @ {describe_witness(w)}" for rank, (cond, w) in enumerate(zip(table.conditions, table.witnesses), 1)]
    if not table.complete:
        lines.append("# table not attested complete")
    return lines


def cmd_tested_polys(args) -> list[str]:
    c = _load_circuit(args.circuit)
    if not isinstance(c, AlgebraicCircuit):
        raise ValueError("circuit has no test gate")
    tested = enumerate_tested_polynomials(c, prune=args.prune, max_tests=args.max_tests, cap=args.expand_cap)
    return [f"{k}: {format_poly(p)}" for k, p in enumerate(tested, 1)]


def cmd_transfer(args) -> list[str]:
    c = _load_circuit(args.circuit)
    if not isinstance(c, AlgebraicCircuit):
        raise ValueError("circuit has no test gate")
    x = parse_rationals(args.input)
    res = transfer_decide(c, x, max_tests=args.max_tests, max_width=args.max_sprime)
    if args.trace:
        lines = res.transcript.to_lines()
        final = {
            "result": {
                "m": res.truncated_rank,
                "c": res.choices,
                "rank": res.rank,
                "decision": res.decision,
                "direct": res.direct,
                "agrees": res.agrees,
            }
        }
        lines.append(json.dumps(final, sort_keys=True))
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    out = [
        f"m = {res.truncated_rank}",
        f"c = ({','.join(map(str, res.choices))})",
        f"rank = {res.rank}",
        f"queries = {len(res.transcript)} (bound {res.query_bound()})",
        f"decision = {res.decision} (direct eval: {res.direct})",
    ]
    if not res.agrees:
        raise OracleInconsistency("decision disagrees with direct evaluation")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signtransfer", description="Exact circuit, resultant and sign-condition tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def circuit_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--circuit", required=True, help="circuit file")
        sp.set_defaults(func=func)
        return sp

    sp = circuit_cmd("eval", cmd_eval, "evaluate a circuit at a rational point")
    sp.add_argument("--input", nargs="+", required=True, help="rationals (p/q), space or comma separated")
    sp.add_argument("--mod", type=int, default=None, help="evaluate modulo M (integer inputs)")

    sp = circuit_cmd("expand", cmd_expand, "expand a circuit into a polynomial")
    sp.add_argument("--expand-cap", type=int, default=DEFAULT_EXPAND_CAP)

    sp = circuit_cmd("coeff", cmd_coeff, "coefficient of one monomial")
    sp.add_argument("--monomial", required=True, help="exponents, comma separated")

    circuit_cmd("formal-degree", cmd_formal_degree, "formal degree of a circuit")

    sp = circuit_cmd("split-mod2", cmd_split_mod2, "constant-free mod-2 homogeneous split")
    sp.add_argument("--dmax", type=int, required=True)

    circuit_cmd("simulate-bool", cmd_simulate_bool, "arithmetize a boolean circuit")

    sp = sub.add_parser("family", help="Hamilton cycle/path polynomials")
    sp.add_argument("kind", choices=["hc", "hp"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-n", type=int, default=DEFAULT_FAMILY_CAP)
    sp.add_argument("--at-ones", action="store_true", help="print the value at the all-ones point")
    sp.set_defaults(func=cmd_family)

    for name, func in (("macaulay", cmd_macaulay), ("resultant", cmd_resultant)):
        sp = sub.add_parser(name, help=f"{name} of a homogeneous system")
        sp.add_argument("--system", required=True)
        sp.set_defaults(func=func)

    sp = sub.add_parser("signcond", help="sign conditions of a polynomial system")
    sp.add_argument("action", choices=["enumerate", "of-point"])
    sp.add_argument("--system", required=True, help="one polynomial per line")
    sp.add_argument("--nvars", type=int, default=None)
    sp.add_argument("--point", nargs="+", help="rational point for of-point")
    sp.add_argument("--points", help="witness file, one point per line (multivariate)")
    sp.add_argument("--attest-complete", action="store_true")
    sp.set_defaults(func=cmd_signcond)

    sp = circuit_cmd("tested-polys", cmd_tested_polys, "list polynomials reaching test gates")
    sp.add_argument("--prune", action="store_true")
    sp.add_argument("--max-tests", type=int, default=DEFAULT_MAX_TESTS)
    sp.add_argument("--expand-cap", type=int, default=DEFAULT_EXPAND_CAP)

    sp = sub.add_parser("transfer", help="decide through sign tests")
    tsub = sp.add_subparsers(dest="action", required=True)
    dp = tsub.add_parser("decide")
    dp.add_argument("--circuit", required=True)
    dp.add_argument("--input", nargs="+", required=True)
    dp.add_argument("--trace", default=None, help="write the query log here")
    dp.add_argument("--max-tests", type=int, default=DEFAULT_MAX_TESTS)
    dp.add_argument("--max-sprime", type=int, default=DEFAULT_MAX_WIDTH)
    dp.set_defaults(func=cmd_transfer)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        lines = args.func(args)
    except (CapExceeded, FormatError, IncompleteTableError, OracleInconsistency, ValueError, LookupError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    for line in lines:
        print(line, file=out)
    return 0


def main() -> None:
    sys.exit(run())
