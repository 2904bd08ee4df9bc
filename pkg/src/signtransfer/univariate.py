"""Dense univariate integer polynomials: Sturm sequences and root isolation.

Polynomials are lists of ints in ascending order of degree, trimmed so the
last entry is nonzero (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Sequence

Dense = list[int]


def trim(p: Sequence[int]) -> Dense:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Dense) -> int:
    return len(p) - 1


def derivative(p: Dense) -> Dense:
    return trim([i * c for i, c in enumerate(p)][1:])


def content(p: Dense) -> int:
    g = 0
    for c in p:
        g = igcd(g, c)
    return g


def primitive(p: Dense) -> Dense:
    """Divide out the content and make the leading coefficient positive."""
    p = trim(p)
    if not p:
        return p
    g = content(p)
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def prem(a: Dense, b: Dense) -> Dense:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = degree(b)
    lb = b[-1]
    k = degree(a) - db + 1
    if k <= 0:
        return a
    r = list(a)
    for _ in range(k):
        if len(r) - 1 < db:
            r = [lb * c for c in r]
            continue
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for i, c in enumerate(b):
            r[shift + i] -= lr * c
        r = trim(r)
        if not r:
            return r
    return trim(r)


def exact_div(a: Dense, b: Dense) -> Dense:
    """Quotient of ``a`` by ``b`` when ``b`` divides ``a`` over Z."""
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        if a:
            raise ValueError("not an exact division")
        return []
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    lb = b[-1]
    for k in range(len(q) - 1, -1, -1):
        top = r[k + len(b) - 1]
        if top % lb:
            raise ValueError("not an exact division")
        qk = top // lb
        q[k] = qk
        if qk:
            for i, c in enumerate(b):
                r[k + i] -= qk * c
    if any(r):
        raise ValueError("not an exact division")
    return trim(q)


def divides(b: Dense, a: Dense) -> bool:
    return not prem(a, b)


def poly_gcd(a: Dense, b: Dense) -> Dense:
    """Primitive gcd with positive leading coefficient."""
    a, b = primitive(a), primitive(b)
    if not a:
        return b
    if not b:
        return a
    while b:
        a, b = b, primitive(prem(a, b))
    return primitive(a)


def squarefree(p: Dense) -> Dense:
    p = primitive(p)
    if degree(p) < 1:
        return p
    g = poly_gcd(p, derivative(p))
    return primitive(exact_div(p, g)) if degree(g) > 0 else p


def sign_at(p: Dense, x: Fraction | int) -> int:
    """Sign of p(x) computed on the homogenized integer form."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for c in reversed(p):
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


def evaluate(p: Dense, x: Fraction | int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sturm_sequence(p: Dense) -> list[Dense]:
    """Sturm chain p, p', -rem(...), with each member made primitive.

    Scaling by positive constants does not change sign variations, so every
    remainder is reduced to its primitive part times its correct sign.
    """
    p = trim(p)
    if not p:
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p]
    d = derivative(p)
    if not d:
        return seq
    seq.append(d)
    while True:
        a, b = seq[-2], seq[-1]
        k = degree(a) - degree(b) + 1
        r = prem(a, b)
        if not r:
            return seq
        # prem = lc(b)^k * a mod b; flip sign when that factor is negative
        if b[-1] < 0 and k % 2:
            r = [-c for c in r]
        g = content(r)
        seq.append([-(c // g) for c in r])


def variations(seq: list[Dense], x: Fraction | int) -> int:
    count = 0
    last = 0
    for q in seq:
        s = sign_at(q, x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def sign_at_infinity(p: Dense, positive: bool) -> int:
    if not p:
        return 0
    s = 1 if p[-1] > 0 else -1
    if not positive and degree(p) % 2:
        s = -s
    return s


def cauchy_bound(p: Dense) -> int:
    """Integer B with every real root strictly inside (-B, B)."""
    p = trim(p)
    lead = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=0)
    return 1 + -(-m // lead) + 1


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _dense_str(p: Dense) -> str:
    from .poly import Polynomial

    return str(Polynomial.from_univariate(p))


class RealRoot:
    """A real root of a squarefree integer polynomial.

    Either ``exact`` holds a rational value, or the root is the only root of
    ``poly`` in the open interval (lo, hi), whose endpoints are not roots.
    The interval can be shrunk with :meth:`refine`; the represented number
    never changes.
    """

    __slots__ = ("poly", "lo", "hi", "exact")

    def __init__(self, poly: Dense, lo: Fraction, hi: Fraction, exact: Fraction | None = None):
        self.poly = poly
        self.exact = exact
        if exact is not None:
            self.lo = self.hi = exact
        else:
            self.lo, self.hi = Fraction(lo), Fraction(hi)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"RealRoot(exact={self.exact})"
        return f"RealRoot({self.lo}, {self.hi})"

    def refine(self) -> None:
        """Halve the isolating interval (may discover the root is rational)."""
        if self.exact is not None:
            return
        mid = (self.lo + self.hi) / 2
        s = sign_at(self.poly, mid)
        if s == 0:
            self.exact = mid
            self.lo = self.hi = mid
        elif s == sign_at(self.poly, self.lo):
            self.lo = mid
        else:
            self.hi = mid

    def sign_of(self, f: Dense, f_sturm: list[Dense] | None = None) -> int:
        """Exact sign of the integer polynomial ``f`` at this root."""
        f = trim(f)
        if not f:
            return 0
        if self.exact is not None:
            return sign_at(f, self.exact)
        g = poly_gcd(self.poly, f)
        if degree(g) > 0 and sign_at(g, self.lo) * sign_at(g, self.hi) < 0:
            return 0
        if degree(f) == 0:
            return 1 if f[0] > 0 else -1
        seq = f_sturm if f_sturm is not None else sturm_sequence(squarefree(f))
        while True:
            if self.exact is not None:
                return sign_at(f, self.exact)
            if sign_at(f, self.lo) != 0 and variations(seq, self.lo) == variations(seq, self.hi):
                return sign_at(f, self.lo)
            self.refine()

    def describe(self) -> str:
        if self.exact is not None:
            return _frac(self.exact)
        return f"root of {_dense_str(self.poly)} in ({_frac(self.lo)}, {_frac(self.hi)})"


def isolate_real_roots(p) -> list[RealRoot]:
    """Isolate the distinct real roots of ``p`` in increasing order.

    ``p`` is a dense coefficient list or a one-variable ``Polynomial``.
    """
    if hasattr(p, "to_univariate"):
        p = p.to_univariate()
    p = trim(p)
    if not p:
        raise ValueError("cannot isolate the roots of the zero polynomial")
    sq = squarefree(p)
    if degree(sq) < 1:
        return []
    if degree(sq) == 1:
        return [RealRoot(sq, 0, 0, Fraction(-sq[0], sq[1]))]
    seq = sturm_sequence(sq)
    b = Fraction(cauchy_bound(sq))
    out: list[RealRoot] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = variations(seq, lo) - variations(seq, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(RealRoot(sq, lo, hi))
            continue
        mid = (lo + hi) / 2
        if sign_at(sq, mid) == 0:
            out.append(RealRoot(sq, 0, 0, mid))
            eps = (hi - lo) / 4
            while sign_at(sq, mid - eps) == 0 or sign_at(sq, mid + eps) == 0 or (
                variations(seq, mid - eps) - variations(seq, mid + eps) != 1
            ):
                eps /= 2
            stack.append((mid + eps, hi))
            stack.append((lo, mid - eps))
        else:
            stack.append((mid, hi))
            stack.append((lo, mid))
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def gcd_free_basis(polys: Sequence[Dense]) -> list[Dense]:
    """Pairwise coprime squarefree polynomials whose roots are the real and
    complex roots of the inputs."""
    basis: list[Dense] = []
    for p in polys:
        p = squarefree(p)
        if degree(p) < 1:
            continue
        nxt: list[Dense] = []
        for b in basis:
            if degree(p) < 1:
                nxt.append(b)
                continue
            g = poly_gcd(b, p)
            if degree(g) < 1:
                nxt.append(b)
                continue
            rest = primitive(exact_div(b, g))
            if degree(rest) > 0:
                nxt.append(rest)
            nxt.append(g)
            p = primitive(exact_div(p, g))
        if degree(p) > 0:
            nxt.append(p)
        basis = nxt
    return basis
