"""Circuit constructions: coefficient-function synthesis, big sums/products,
and the homogeneous mod-2 split."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .boolean import BooleanCircuit, simulate_boolean
from .circuit import DEFAULT_EXPAND_CAP, ArithmeticCircuit, CircuitBuilder
from .errors import CapExceeded
from .poly import Monomial, Polynomial


@dataclass(frozen=True)
class CoefficientFunction:
    """Bit oracle for the coefficients of a polynomial.

    ``bit(alpha, 0)`` is the sign (1 for negative), ``bit(alpha, i)`` for
    ``1 <= i <= coeff_bits`` is the bit of weight 2^(i-1) of the magnitude.
    Monomials range over total degree ``<= degree_bound``.
    """

    bit: Callable[[Monomial, int], int]
    degree_bound: int
    coeff_bits: int

    def coefficient(self, alpha: Monomial) -> int:
        mag = sum(1 << (i - 1) for i in range(1, self.coeff_bits + 1) if self.bit(alpha, i))
        return -mag if self.bit(alpha, 0) else mag


def coefficient_function(p: Polynomial) -> CoefficientFunction:
    """The coefficient function of an explicit polynomial."""
    terms = dict(p.terms)
    nbits = max((abs(c).bit_length() for c in terms.values()), default=0)

    def bit(alpha: Monomial, i: int) -> int:
        c = terms.get(tuple(alpha), 0)
        if i == 0:
            return int(c < 0)
        if i > nbits:
            return 0
        return abs(c) >> (i - 1) & 1

    return CoefficientFunction(bit, max(p.degree(), 0), nbits)


def monomials_up_to(nvars: int, degree: int) -> list[Monomial]:
    """All monomials of total degree <= ``degree``, canonical order (largest first)."""
    out = [m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) <= degree]
    out.sort(reverse=True)
    return out


def _count_monomials(nvars: int, degree: int) -> int:
    from math import comb

    return comb(degree + nvars, nvars)


def build_from_coefficients(f: CoefficientFunction, nvars: int, cap: int = DEFAULT_EXPAND_CAP) -> ArithmeticCircuit:
    """Constant-free circuit summing every monomial with its decoded coefficient.

    Powers of variables and powers of two come from repeated squaring; the
    terms are added by a balanced tree, positive and negative terms
    separately, and subtracted at the end.
    """
    if _count_monomials(nvars, f.degree_bound) > cap:
        raise CapExceeded("monomial count for coefficient synthesis", cap, "--expand-cap")
    b = CircuitBuilder(nvars)
    two_powers: dict[int, int] = {}

    def pow2(k: int) -> int:
        if k not in two_powers:
            two_powers[k] = b.power_of_two(k)
        return two_powers[k]

    pos: list[int] = []
    neg: list[int] = []
    for alpha in monomials_up_to(nvars, f.degree_bound):
        bits = [i for i in range(1, f.coeff_bits + 1) if f.bit(alpha, i)]
        if not bits:
            continue
        coeff = b.balanced_sum([pow2(i - 1) for i in bits])
        factors = [b.power(b.input(v), e) for v, e in enumerate(alpha) if e]
        if factors:
            mono = b.balanced_product(factors)
            term = mono if bits == [1] else b.mul(coeff, mono)
        else:
            term = coeff
        (neg if f.bit(alpha, 0) else pos).append(term)
    if pos and neg:
        out = b.sub(b.balanced_sum(pos), b.balanced_sum(neg))
    elif pos:
        out = b.balanced_sum(pos)
    elif neg:
        out = b.sub(b.zero(), b.balanced_sum(neg))
    else:
        out = b.zero()
    return b.build(out)


def big_combine(
    g: ArithmeticCircuit,
    p: int,
    mode: str,
    membership: BooleanCircuit | None = None,
    cap: int = DEFAULT_EXPAND_CAP,
) -> ArithmeticCircuit:
    """Sum or product of g(x, e) over e in {0,1}^p.

    The last ``p`` inputs of ``g`` are the summation variables.  With a
    membership circuit chi, the sum is restricted through chi(e)*g and the
    product through chi(e)*g + (1 - chi(e)).
    """
    if mode not in ("sum", "product"):
        raise ValueError(f"mode must be 'sum' or 'product', got {mode!r}")
    nx = g.nvars - p
    if nx < 0:
        raise ValueError(f"circuit has {g.nvars} inputs, cannot bind {p}")
    if 2 ** p > cap:
        raise CapExceeded("big sum/product instance count", cap, "--expand-cap")
    chi = None
    if membership is not None:
        if membership.nvars != p:
            raise ValueError(f"membership circuit must have {p} inputs")
        chi = simulate_boolean(membership)
    b = CircuitBuilder(nx)
    xs = [b.input(i) for i in range(nx)]
    consts = {1: b.one()}
    items: list[int] = []
    for eps in itertools.product((0, 1), repeat=p):
        if 0 in eps and 0 not in consts:
            consts[0] = b.zero()
        leaves = [consts[e] for e in eps]
        val = b.embed(g, xs + leaves)
        if chi is not None:
            ch = b.embed(chi, leaves)
            if mode == "sum":
                val = b.mul(ch, val)
            else:
                val = b.add(b.mul(ch, val), b.sub(b.one(), ch))
        items.append(val)
    out = b.balanced_sum(items) if mode == "sum" else b.balanced_product(items)
    return b.build(out)


def homogeneous_split_mod2(c: ArithmeticCircuit, dmax: int) -> ArithmeticCircuit:
    """Constant-free circuit congruent mod 2 to the degree-<=dmax part of ``c``.

    Every gate is split into its homogeneous components of degrees 1..dmax;
    the degree-0 component is only tracked as a parity bit, so even constants
    disappear and odd ones become 1.  Components above ``dmax`` are dropped.
    Subtraction of a missing component is replaced by the component itself,
    which is the same thing mod 2.  The formal degree of the result is at
    most ``dmax``.
    """
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    b = CircuitBuilder(c.nvars)
    comps: list[list[int | None]] = []
    parity: list[int] = []
    for g in c.gates:
        cur: list[int | None] = [None] * (dmax + 1)
        if g.op == "input":
            cur[1] = b.input(g.value)
            par = 0
        elif g.op == "const":
            par = g.value % 2
        elif g.op in ("add", "sub"):
            ca, cb = comps[g.args[0]], comps[g.args[1]]
            for i in range(1, dmax + 1):
                x, y = ca[i], cb[i]
                if x is None:
                    cur[i] = y
                elif y is None:
                    cur[i] = x
                else:
                    cur[i] = b.add(x, y) if g.op == "add" else b.sub(x, y)
            par = (parity[g.args[0]] + parity[g.args[1]]) % 2
        elif g.op == "mul":
            ca, cb = comps[g.args[0]], comps[g.args[1]]
            pa, pb = parity[g.args[0]], parity[g.args[1]]
            for i in range(1, dmax + 1):
                parts: list[int] = []
                if pa and cb[i] is not None:
                    parts.append(cb[i])
                if pb and ca[i] is not None:
                    parts.append(ca[i])
                for j in range(1, i):
                    if ca[j] is not None and cb[i - j] is not None:
                        parts.append(b.mul(ca[j], cb[i - j]))
                if parts:
                    cur[i] = b.balanced_sum(parts)
            par = pa * pb
        else:
            raise ValueError(f"cannot split gate of kind {g.op!r}")
        comps.append(cur)
        parity.append(par)
    final = [x for x in comps[c.output][1:] if x is not None]
    if parity[c.output]:
        final.append(b.one())
    out = b.balanced_sum(final) if final else b.zero()
    return b.build(out)
