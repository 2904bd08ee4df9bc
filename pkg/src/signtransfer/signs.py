"""Sign conditions of polynomial systems.

The satisfiable sign conditions of a system are listed in a canonical order
(lexicographic with -1 < 0 < +1, first polynomial most significant); the rank
of a condition is its 1-based position in that list.  Univariate systems are
enumerated completely with Sturm-based root isolation; multivariate systems
only through a caller-supplied witness set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .poly import Number, Polynomial, sign
from .univariate import (
    RealRoot,
    cauchy_bound,
    degree,
    divides,
    gcd_free_basis,
    isolate_real_roots,
    sign_at,
    squarefree,
    sturm_sequence,
)

SignCondition = tuple[int, ...]
Truncated = tuple[int, ...]
Witness = Union[tuple[Fraction, ...], RealRoot]


def sign_condition_of_point(system: Sequence[Polynomial], x: Sequence[Number]) -> SignCondition:
    return tuple(sign(f.evaluate(x)) for f in system)


def truncate(cond: SignCondition) -> Truncated:
    return tuple(int(s != 0) for s in cond)


def witness_condition(system: Sequence[Polynomial], w: Witness) -> SignCondition:
    """Sign condition realized by a stored witness, computed exactly."""
    if isinstance(w, RealRoot):
        return tuple(w.sign_of(f.to_univariate()) for f in system)
    return sign_condition_of_point(system, w)


def describe_witness(w: Witness) -> str:
    if isinstance(w, RealRoot):
        return w.describe()
    return ", ".join(str(v) for v in w)


@dataclass(frozen=True)
class SignConditionTable:
    system: tuple[Polynomial, ...]
    conditions: tuple[SignCondition, ...]
    witnesses: tuple[Witness, ...]
    complete: bool
    _ranks: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_ranks", {c: k + 1 for k, c in enumerate(self.conditions)})

    def __len__(self) -> int:
        return len(self.conditions)

    @property
    def size(self) -> int:
        return len(self.conditions)

    def condition(self, rank: int) -> SignCondition:
        if not 1 <= rank <= len(self.conditions):
            raise IndexError(f"rank {rank} out of range 1..{len(self.conditions)}")
        return self.conditions[rank - 1]

    def rank(self, cond: Sequence[int]) -> int:
        """1-based rank; KeyError if the condition is not in the table."""
        return self._ranks[tuple(cond)]

    def __contains__(self, cond) -> bool:
        return tuple(cond) in self._ranks

    def coefficient_bits(self) -> int:
        """Largest coefficient bit size in the system (a statistic only)."""
        return max((f.max_coeff_bits() for f in self.system), default=0)


def _univariate_table(system: tuple[Polynomial, ...]) -> SignConditionTable:
    dense = [f.to_univariate() for f in system]
    active = [d for d in dense if degree(d) >= 1]
    basis = gcd_free_basis(active)
    roots: list[tuple[RealRoot, int]] = []
    for bi, b in enumerate(basis):
        for r in isolate_real_roots(b):
            roots.append((r, bi))
    _separate(roots)

    # points: alternating sample / root / sample / ... / sample
    bound = Fraction(max((cauchy_bound(b) for b in basis), default=0))
    points: list[tuple[Witness, int | None]] = []
    if not roots:
        points.append(((Fraction(0),), None))
    else:
        points.append(((-(bound + 1),), None))
        for k, (r, bi) in enumerate(roots):
            if k:
                prev = roots[k - 1][0]
                points.append((((prev.hi + r.lo) / 2,), None))
            points.append((r if r.exact is None else (r.exact,), bi))
        points.append(((bound + 1,), None))

    sturms: dict[int, list] = {}
    found: dict[SignCondition, Witness] = {}
    for w, bi in points:
        if not isinstance(w, RealRoot):
            cond = tuple(sign_at(d, w[0]) for d in dense)
        else:
            cond_list = []
            for k, d in enumerate(dense):
                if not d:
                    cond_list.append(0)
                elif degree(d) == 0:
                    cond_list.append(1 if d[0] > 0 else -1)
                elif divides(basis[bi], d):
                    cond_list.append(0)
                else:
                    if k not in sturms:
                        sturms[k] = sturm_sequence(squarefree(d))
                    cond_list.append(w.sign_of(d, sturms[k]))
            cond = tuple(cond_list)
        found.setdefault(cond, w)
    conds = sorted(found)
    return SignConditionTable(system, tuple(conds), tuple(found[c] for c in conds), True)


def _separate(roots: list[tuple[RealRoot, int]]) -> None:
    """Refine isolating intervals until they are strictly ordered."""
    while True:
        roots.sort(key=lambda t: (t[0].lo, t[0].hi))
        clash = False
        for k in range(len(roots) - 1):
            a, b = roots[k][0], roots[k + 1][0]
            if a.hi < b.lo:
                continue
            clash = True
            # the two numbers differ (coprime polynomials), so refining
            # whichever is still an interval eventually separates them
            if a.exact is None:
                a.refine()
            if b.exact is None:
                b.refine()
        if not clash:
            return


def enumerate_sign_conditions(
    system: Sequence[Polynomial],
    backend: str = "univariate",
    points: Sequence[Sequence[Number]] | None = None,
    attest_complete: bool = False,
) -> SignConditionTable:
    """Table of satisfiable sign conditions of ``system``.

    ``backend="univariate"`` is complete for one-variable systems.
    ``backend="witness"`` collects the conditions of the given ``points`` and
    is marked complete only when the caller attests it.
    """
    system = tuple(system)
    if not system:
        raise ValueError("empty system")
    nv = system[0].nvars
    if any(f.nvars != nv for f in system):
        raise ValueError("all polynomials must have the same number of variables")
    if backend == "univariate":
        if nv != 1:
            raise ValueError(f"univariate backend needs 1 variable, system has {nv}")
        return _univariate_table(system)
    if backend == "witness":
        if points is None:
            raise ValueError("witness backend needs points")
        found: dict[SignCondition, tuple[Fraction, ...]] = {}
        for p in points:
            if len(p) != nv:
                raise ValueError(f"point {p} has wrong arity (expected {nv})")
            pt = tuple(Fraction(v) for v in p)
            found.setdefault(sign_condition_of_point(system, pt), pt)
        conds = sorted(found)
        return SignConditionTable(system, tuple(conds), tuple(found[c] for c in conds), attest_complete)
    raise ValueError(f"unknown backend {backend!r}")


def truncated_table(t: SignConditionTable) -> list[Truncated]:
    """Distinct truncations in lexicographic order (subsets before supersets)."""
    return sorted({truncate(c) for c in t.conditions})


@dataclass(frozen=True)
class TwoValuedView:
    """Compatible conditions with the zero positions dropped.

    ``vectors[k]`` encodes the nonzero positions ``index_map`` of the
    condition of rank ``ranks[k]``: 0 for > 0 and 1 for < 0.
    """

    truncated: Truncated
    index_map: tuple[int, ...]
    vectors: tuple[tuple[int, ...], ...]
    ranks: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.index_map)

    def __len__(self) -> int:
        return len(self.vectors)


def compatible_view(t: SignConditionTable, T: Sequence[int]) -> TwoValuedView:
    T = tuple(T)
    if len(T) != len(t.system):
        raise ValueError("truncated condition has wrong length")
    index_map = tuple(k for k, bit in enumerate(T) if bit)
    vectors = []
    ranks = []
    for rank, cond in enumerate(t.conditions, 1):
        if truncate(cond) == T:
            vectors.append(tuple(1 if cond[k] < 0 else 0 for k in index_map))
            ranks.append(rank)
    if not vectors:
        raise ValueError(f"truncated condition {T} is not realized in the table")
    return TwoValuedView(T, index_map, tuple(vectors), tuple(ranks))
