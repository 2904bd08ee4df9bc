"""Macaulay matrices of square homogeneous systems and exact determinants."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import FormatError
from .poly import Monomial, Polynomial, parse_poly

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class HomogeneousSystem:
    """n+1 forms of common degree ``delta`` in X0..Xn (``nvars == n+1``)."""

    n: int
    delta: int
    polys: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if self.n < 0 or self.delta < 1:
            raise ValueError("need n >= 0 and delta >= 1")
        if len(self.polys) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} polynomials, got {len(self.polys)}")
        for k, f in enumerate(self.polys):
            if f.nvars != self.n + 1:
                raise ValueError(f"polynomial {k + 1} has {f.nvars} variables, expected {self.n + 1}")
            if not f.is_homogeneous(self.delta):
                raise ValueError(f"polynomial {k + 1} is not homogeneous of degree {self.delta}")


@dataclass(frozen=True)
class MacaulayMatrix:
    n: int
    delta: int
    d: int
    monomials: tuple[Monomial, ...]
    rows: tuple[tuple[int, ...], ...]
    provenance: tuple[tuple[Monomial, int], ...]  # row monomial -> (shift, 0-based form index)

    @property
    def size(self) -> int:
        return len(self.monomials)

    def matrix(self) -> IntMatrix:
        return [list(r) for r in self.rows]

    def is_reduced(self, k: int) -> bool:
        """Row/column ``k`` is reduced when exactly one X_j^delta divides it."""
        return sum(e >= self.delta for e in self.monomials[k]) == 1


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    """Monomials of degree ``d`` in X0..Xn, largest first (X0^d leads)."""
    if n < 0 or d < 0:
        raise ValueError("n and d must be non-negative")
    out: list[Monomial] = []

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, slots - 1)

    rec([], d, n + 1)
    return out


def macaulay_degree(n: int, delta: int) -> int:
    return 1 + (n + 1) * (delta - 1)


def build_macaulay(sys: HomogeneousSystem) -> MacaulayMatrix:
    n, delta = sys.n, sys.delta
    d = macaulay_degree(n, delta)
    mons = monomials_of_degree(n, d)
    index = {m: k for k, m in enumerate(mons)}
    rows = []
    prov = []
    for alpha in mons:
        i = next(j for j, e in enumerate(alpha) if e >= delta)
        shift = tuple(e - (delta if j == i else 0) for j, e in enumerate(alpha))
        row = [0] * len(mons)
        for beta, c in sys.polys[i].terms.items():
            row[index[tuple(a + b for a, b in zip(shift, beta))]] = c
        rows.append(tuple(row))
        prov.append((shift, i))
    assert len(mons) == comb(d + n, d)
    return MacaulayMatrix(n, delta, d, tuple(mons), tuple(rows), tuple(prov))


def reduced_submatrix(m: MacaulayMatrix) -> IntMatrix:
    keep = [k for k in range(m.size) if not m.is_reduced(k)]
    return [[m.rows[r][c] for c in keep] for r in keep]


def det_exact(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination; 1 for the empty matrix."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sgn = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sgn = -sgn
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (piv * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sgn * a[n - 1][n - 1]


@dataclass(frozen=True)
class ResultantVerdict:
    det_m: int
    det_m_reduced: int
    verdict: str  # "zero", "nonzero" or "indeterminate"


def resultant_vanishing(sys: HomogeneousSystem) -> ResultantVerdict:
    m = build_macaulay(sys)
    dm = det_exact(m.matrix())
    dr = det_exact(reduced_submatrix(m))
    if dm != 0:
        verdict = "nonzero"
    elif dr != 0:
        verdict = "zero"
    else:
        verdict = "indeterminate"
    return ResultantVerdict(dm, dr, verdict)


def parse_system(text: str) -> HomogeneousSystem:
    """Header ``n <n> delta <delta>`` then n+1 polynomial lines.

    Polynomials use the usual text form with x1..x{n+1} standing for X0..Xn.
    ``#`` starts a comment.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise FormatError("empty system file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "n" or parts[2] != "delta":
        raise FormatError("header must read 'n <n> delta <delta>'", lineno)
    try:
        n, delta = int(parts[1]), int(parts[3])
    except ValueError:
        raise FormatError("n and delta must be integers", lineno) from None
    body = lines[1:]
    if len(body) != n + 1:
        raise FormatError(f"expected {n + 1} polynomial lines, found {len(body)}", lineno)
    polys = [parse_poly(line, n + 1, ln) for ln, line in body]
    try:
        return HomogeneousSystem(n, delta, tuple(polys))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
