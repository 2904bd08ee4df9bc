"""Sparse multivariate polynomials with integer coefficients.

A polynomial lives in a fixed ambient ring Z[x1, ..., xk]; ``nvars`` is k.
Terms are stored as a map from exponent tuples to nonzero Python ints, so the
zero polynomial is the empty map.  Evaluation takes ``Fraction`` points and is
exact: no floating point is used anywhere.

Canonical monomial order is lexicographic on exponent tuples with the first
variable most significant; printing lists terms from the largest monomial
down, e.g. ``x1^2 - 2*x1*x2 + 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import FormatError

Monomial = tuple[int, ...]
Number = int | Fraction


def sign(value: Number) -> int:
    """Return -1, 0 or +1."""
    return (value > 0) - (value < 0)


def bitsize(value: int) -> int:
    """Bits of ``|value|`` plus one sign bit."""
    return abs(value).bit_length() + 1


class Polynomial:
    """Immutable sparse polynomial over the integers."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, int] = {}
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has length {len(mono)}, expected {nvars}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            if not isinstance(coeff, int):
                if isinstance(coeff, Fraction) and coeff.denominator == 1:
                    coeff = coeff.numerator
                else:
                    raise TypeError(f"coefficients must be integers, got {coeff!r}")
            acc[mono] = acc.get(mono, 0) + coeff
        self.nvars = nvars
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: int) -> Polynomial:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def var(cls, nvars: int, index: int) -> Polynomial:
        """The variable x_{index+1} (``index`` is 0-based)."""
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        mono = [0] * nvars
        mono[index] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int = 1) -> Polynomial:
        return cls(len(exponents), {tuple(exponents): coeff})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[int]) -> Polynomial:
        """Build from a dense ascending coefficient list in one variable."""
        return cls(1, {(i,): c for i, c in enumerate(coeffs)})

    # -- queries -----------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def coeff(self, mono: Sequence[int]) -> int:
        return self._terms.get(tuple(mono), 0)

    @property
    def constant_term(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((m[index] for m in self._terms), default=-1)

    def max_coeff_bits(self) -> int:
        """Largest coefficient bit size (magnitude bits plus sign bit)."""
        return max((bitsize(c) for c in self._terms.values()), default=0)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(m) for m in self._terms}
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in canonical order, largest monomial first."""
        return sorted(self._terms.items(), reverse=True)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return Polynomial(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) - c
        return Polynomial(self.nvars, acc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation --------------------------------------------------------

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        """Exact value at a rational point.

        Works over a common denominator so the inner loop is integer-only.
        """
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        if not self._terms:
            return Fraction(0)
        pts = [Fraction(v) for v in point]
        maxdeg = [max(m[i] for m in self._terms) for i in range(self.nvars)]
        nums = [p.numerator for p in pts]
        dens = [p.denominator for p in pts]
        npow = [_powers(nums[i], maxdeg[i]) for i in range(self.nvars)]
        dpow = [_powers(dens[i], maxdeg[i]) for i in range(self.nvars)]
        total = 0
        for m, c in self._terms.items():
            t = c
            for i, e in enumerate(m):
                if maxdeg[i]:
                    t *= npow[i][e] * dpow[i][maxdeg[i] - e]
            total += t
        denom = 1
        for i in range(self.nvars):
            denom *= dpow[i][maxdeg[i]]
        return Fraction(total, denom)

    __call__ = evaluate

    def sign_at(self, point: Sequence[Number]) -> int:
        return sign(self.evaluate(point))

    def compose(self, values: Sequence[Polynomial]) -> Polynomial:
        """Substitute polynomial ``values[i]`` for x_{i+1}."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        if not values:
            return Polynomial(0, self._terms)
        target = values[0].nvars
        result = Polynomial.zero(target)
        cache: dict[tuple[int, int], Polynomial] = {}
        for m, c in self._terms.items():
            t = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = values[i] ** e
                    t = t * cache[key]
            result = result + t
        return result

    def to_univariate(self) -> list[int]:
        """Dense ascending coefficients; requires ``nvars == 1``."""
        if self.nvars != 1:
            raise ValueError("not a univariate polynomial")
        deg = self.degree()
        out = [0] * (deg + 1)
        for (e,), c in self._terms.items():
            out[e] = c
        return out

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {format_poly(self)!r})"


def _powers(base: int, k: int) -> list[int]:
    out = [1] * (k + 1)
    for i in range(1, k + 1):
        out[i] = out[i - 1] * base
    return out


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Ring operation by name: ``add``, ``sub`` or ``mul``."""
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: Polynomial, point: Sequence[Number]) -> Fraction:
    return p.evaluate(point)


def homogeneous_components(p: Polynomial, dmax: int) -> list[Polynomial]:
    """Components of degree 0..dmax; higher-degree parts are dropped."""
    if dmax < 0:
        raise ValueError("dmax must be non-negative")
    buckets: list[dict[Monomial, int]] = [{} for _ in range(dmax + 1)]
    for m, c in p.terms.items():
        d = sum(m)
        if d <= dmax:
            buckets[d][m] = c
    return [Polynomial(p.nvars, b) for b in buckets]


# -- degree reduction by binary exponent splitting ---------------------------


def _bits(k: int) -> list[int]:
    return [j for j in range(k.bit_length()) if k >> j & 1]


def reduced_nvars(nvars: int, pbound: int) -> int:
    return nvars * pbound + pbound


def z_index(i: int, j: int, pbound: int) -> int:
    """Position of z_{i,j} (stand-in for v_i^(2^j)); ``i`` 0-based."""
    return i * pbound + j


def w_index(j: int, nvars: int, pbound: int) -> int:
    """Position of w_j (stand-in for 2^(2^j))."""
    return nvars * pbound + j


def degree_reduce(p: Polynomial, pbound: int) -> Polynomial:
    """Rewrite ``p`` with exponents and coefficient bits split into binary.

    Each power v_i^k becomes the product of z_{i,j} over the set bits j of k,
    and each coefficient bit 2^b becomes the product of w_j over the set bits
    of b.  The result has coefficients in {-1, 0, 1}; substituting
    z_{i,j} = v_i^(2^j) and w_j = 2^(2^j) gives back ``p``
    (see :func:`degree_restore`).
    """
    if pbound < 0:
        raise ValueError("pbound must be non-negative")
    if p.degree() >= 2 ** pbound:
        raise ValueError(f"degree {p.degree()} not below 2^{pbound}")
    width = reduced_nvars(p.nvars, pbound)
    acc: dict[Monomial, int] = {}
    for mono, c in p.terms.items():
        mag = abs(c)
        if mag.bit_length() > 2 ** pbound:
            raise ValueError(f"coefficient {c} not below 2^(2^{pbound})")
        base = [0] * width
        for i, e in enumerate(mono):
            for j in _bits(e):
                base[z_index(i, j, pbound)] = 1
        s = 1 if c > 0 else -1
        for b in _bits(mag):
            out = list(base)
            for j in _bits(b):
                out[w_index(j, p.nvars, pbound)] = 1
            key = tuple(out)
            acc[key] = acc.get(key, 0) + s
    return Polynomial(width, acc)


def degree_restore(h: Polynomial, nvars: int, pbound: int) -> Polynomial:
    """Inverse substitution of :func:`degree_reduce`."""
    if h.nvars != reduced_nvars(nvars, pbound):
        raise ValueError("variable count does not match (nvars, pbound)")
    values: list[Polynomial] = [Polynomial.zero(nvars)] * h.nvars
    for i in range(nvars):
        x = Polynomial.var(nvars, i)
        for j in range(pbound):
            values[z_index(i, j, pbound)] = x ** (2 ** j)
    for j in range(pbound):
        values[w_index(j, nvars, pbound)] = Polynomial.constant(nvars, 2 ** (2 ** j))
    return h.compose(values)


# -- text form ---------------------------------------------------------------


def _format_mono(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (mono, c) in enumerate(p.sorted_terms()):
        body = _format_mono(mono)
        mag = abs(c)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}*{body}"
        if k == 0:
            out.append(term if c > 0 else f"-{term}")
        else:
            out.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([xX])(\d+)|(\^)|(\*)|(\+)|(-))")


def parse_poly(text: str, nvars: int | None = None, lineno: int | None = None) -> Polynomial:
    """Parse the text form, e.g. ``3*x1^2 x2 - x1 + 5``.

    Variables are ``x1``, ``x2``, ...; the ``*`` between factors is optional
    and whitespace is ignored.  ``nvars`` defaults to the largest variable
    index that occurs.
    """
    tokens: list[tuple[str, object]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormatError(f"unexpected character {text[pos]!r} in polynomial", lineno)
        num, _, var, caret, star, plus, minus = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif var is not None:
            idx = int(var)
            if idx < 1:
                raise FormatError("variable indices start at 1", lineno)
            tokens.append(("var", idx - 1))
        elif caret:
            tokens.append(("^", None))
        elif star:
            tokens.append(("*", None))
        elif plus:
            tokens.append(("+", None))
        else:
            tokens.append(("-", None))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not tokens:
        raise FormatError("empty polynomial", lineno)

    raw: list[tuple[dict[int, int], int]] = []
    i = 0
    n = len(tokens)
    first = True
    while i < n:
        s = 1
        if tokens[i][0] in "+-":
            s = -1 if tokens[i][0] == "-" else 1
            i += 1
        elif not first:
            raise FormatError("expected '+' or '-' between terms", lineno)
        first = False
        coeff = 1
        exps: dict[int, int] = {}
        nfactors = 0
        while i < n and tokens[i][0] not in "+-":
            kind, val = tokens[i]
            if kind == "*":
                if nfactors == 0:
                    raise FormatError("'*' without left operand", lineno)
                i += 1
                continue
            if kind == "num":
                coeff *= val
                i += 1
            elif kind == "var":
                e = 1
                i += 1
                if i < n and tokens[i][0] == "^":
                    if i + 1 >= n or tokens[i + 1][0] != "num":
                        raise FormatError("exponent must be a non-negative integer", lineno)
                    e = tokens[i + 1][1]
                    i += 2
                exps[val] = exps.get(val, 0) + e
            else:
                raise FormatError(f"unexpected {kind!r}", lineno)
            nfactors += 1
        if nfactors == 0:
            raise FormatError("empty term", lineno)
        raw.append((exps, s * coeff))

    used = max((v + 1 for exps, _ in raw for v in exps), default=0)
    if nvars is None:
        nvars = used
    elif used > nvars:
        raise FormatError(f"variable x{used} exceeds declared count {nvars}", lineno)
    terms = []
    for exps, c in raw:
        mono = [0] * nvars
        for v, e in exps.items():
            mono[v] = e
        terms.append((tuple(mono), c))
    return Polynomial(nvars, terms)
