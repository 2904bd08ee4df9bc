"""GF(2) vectors and the halving-vector search.

Vectors are tuples of 0/1.  Internally they are packed into ints with the
first coordinate as the most significant bit, so counting order over
candidate vectors is plain integer order.
"""

from __future__ import annotations

from typing import Sequence

from .errors import CapExceeded

DEFAULT_MAX_WIDTH = 24

Vector = tuple[int, ...]


def inner_product(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a & b for a, b in zip(u, v)) & 1


def pack(v: Sequence[int]) -> int:
    x = 0
    for bit in v:
        x = x << 1 | (bit & 1)
    return x


def unpack(x: int, width: int) -> Vector:
    return tuple(x >> (width - 1 - k) & 1 for k in range(width))


def is_halving_count(count: int, n: int) -> bool:
    """count in [n/2 - sqrt(n)/2, n/2 + sqrt(n)/2], decided without roots."""
    return (2 * count - n) ** 2 <= n


def orthogonal_count(u: Sequence[int], V: Sequence[Sequence[int]]) -> int:
    return sum(1 for v in V if inner_product(u, v) == 0)


def _width(V: Sequence[Sequence[int]]) -> int:
    if not V:
        raise ValueError("vector set is empty")
    width = len(V[0])
    if any(len(v) != width for v in V):
        raise ValueError("vectors have different lengths")
    return width


def find_halving_vector(V: Sequence[Sequence[int]], max_width: int = DEFAULT_MAX_WIDTH) -> Vector:
    """First u in counting order orthogonal to a near-half of ``V``.

    A valid u always exists for a set of distinct vectors, so the search
    cannot come back empty-handed.
    """
    width = _width(V)
    if width > max_width:
        raise CapExceeded("halving-search vector length s'", max_width, "--max-sprime")
    packed = [pack(v) for v in V]
    if len(set(packed)) != len(packed):
        raise ValueError("vectors must be pairwise distinct")
    n = len(packed)
    for u in range(1 << width):
        odd = sum((u & v).bit_count() & 1 for v in packed)
        if is_halving_count(n - odd, n):
            return unpack(u, width)
    raise AssertionError("no halving vector found; the input vectors cannot be distinct")


def star_sequence(V: Sequence[Sequence[int]], choices: Sequence[int], max_width: int = DEFAULT_MAX_WIDTH) -> list[Vector]:
    """Vectors u1..u(l+1) where u(i+1) halves the part of ``V`` whose inner
    products with u1..ui equal the first i choices."""
    current = [tuple(v) for v in V]
    out = [find_halving_vector(current, max_width)]
    for i, c in enumerate(choices):
        u = out[i]
        current = [v for v in current if inner_product(u, v) == c]
        if not current:
            raise ValueError(f"choice list is inconsistent at step {i + 1}")
        out.append(find_halving_vector(current, max_width))
    return out
