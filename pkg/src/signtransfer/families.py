"""Hamilton cycle and Hamilton path polynomials over an n x n matrix of variables.

Variable x_{i,j} (1-based) sits at position (i-1)*n + (j-1).
"""

from __future__ import annotations

import itertools

from .errors import CapExceeded
from .poly import Polynomial

DEFAULT_FAMILY_CAP = 8


def edge_index(i: int, j: int, n: int) -> int:
    return (i - 1) * n + (j - 1)


def _edges_monomial(edges, n: int) -> tuple[int, ...]:
    mono = [0] * (n * n)
    for i, j in edges:
        mono[edge_index(i, j, n)] += 1
    return tuple(mono)


def hamilton_cycles(n: int) -> Polynomial:
    """HC_n: sum over n-cycles s of prod_i x_{i, s(i)}."""
    terms = []
    for rest in itertools.permutations(range(2, n + 1)):
        order = (1,) + rest
        edges = [(order[t], order[(t + 1) % n]) for t in range(n)]
        terms.append((_edges_monomial(edges, n), 1))
    return Polynomial(n * n, terms)


def hamilton_paths(n: int) -> Polynomial:
    """Sum over vertex pairs j < k of the n-cycles that close k -> j,
    with the closing edge left out; one monomial per undirected path."""
    terms = []
    for j, k in itertools.combinations(range(1, n + 1), 2):
        middle = [v for v in range(1, n + 1) if v not in (j, k)]
        for perm in itertools.permutations(middle):
            order = (j,) + perm + (k,)
            edges = [(order[t], order[t + 1]) for t in range(n - 1)]
            terms.append((_edges_monomial(edges, n), 1))
    return Polynomial(n * n, terms)


def hamilton_families(n: int, kind: str, cap: int = DEFAULT_FAMILY_CAP) -> Polynomial:
    if n > cap:
        raise CapExceeded("family size n", cap, "--max-n")
    if n < 2:
        raise ValueError("n must be at least 2")
    if kind == "cycles":
        return hamilton_cycles(n)
    if kind == "paths":
        return hamilton_paths(n)
    raise ValueError(f"kind must be 'cycles' or 'paths', got {kind!r}")
