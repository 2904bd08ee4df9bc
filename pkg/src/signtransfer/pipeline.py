"""Deciding an algebraic circuit through sign tests only.

The decision procedure never looks at the input point directly.  It asks a
:class:`TestOracle` for the signs of two kinds of test polynomials:

* ``truncated(i)``: the product over j <= i of the sum of f_k(x)^2 over the
  positions k that are zero in the j-th truncated condition;
* ``product(i, k, c)``: the product of f_j(x) over the support of the i-th
  halving vector for the k-th truncated condition and choices ``c``.

From the answers it finds the rank of the input's sign condition, then
replays the circuit on that condition.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .bss import DEFAULT_MAX_TESTS, AlgebraicCircuit, _gate_polys, enumerate_tested_polynomials, eval_bss, slice_levels
from .errors import IncompleteTableError, OracleInconsistency
from .gf2 import DEFAULT_MAX_WIDTH, inner_product, star_sequence
from .poly import Number, sign
from .signs import (
    SignConditionTable,
    Truncated,
    TwoValuedView,
    compatible_view,
    enumerate_sign_conditions,
    truncated_table,
)


@dataclass
class Query:
    kind: str
    params: dict
    answer: int


@dataclass
class Transcript:
    queries: list[Query] = field(default_factory=list)

    def record(self, kind: str, params: dict, answer: int) -> None:
        self.queries.append(Query(kind, params, answer))

    def __len__(self) -> int:
        return len(self.queries)

    def count(self, kind: str | None = None) -> int:
        if kind is None:
            return len(self.queries)
        return sum(1 for q in self.queries if q.kind == kind)

    def to_lines(self) -> list[str]:
        lines = []
        nt = npr = 0
        for q in self.queries:
            if q.kind == "truncated":
                nt += 1
            else:
                npr += 1
            rec = asdict(q)
            rec.update(total=nt + npr, truncated=nt, product=npr)
            lines.append(json.dumps(rec, sort_keys=True))
        return lines

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> Transcript:
        t = cls()
        for line in lines:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if "result" in rec:
                continue
            if rec["kind"] not in ("truncated", "product") or rec["answer"] not in (-1, 0, 1):
                raise ValueError(f"malformed transcript line: {line}")
            t.record(rec["kind"], rec["params"], rec["answer"])
            if rec["total"] != len(t):
                raise ValueError("running count does not match")
        return t


class TestOracle:
    """Answers sign queries about a hidden point for a fixed table.

    Values f_k(x) are evaluated exactly once each; product signs are
    products of these signs, so no product polynomial is ever expanded.
    """

    __test__ = False  # not a pytest class

    def __init__(
        self,
        table: SignConditionTable,
        x: Sequence[Number],
        transcript: Transcript | None = None,
        max_width: int = DEFAULT_MAX_WIDTH,
    ):
        self._table = table
        self._x = tuple(Fraction(v) for v in x)
        self._signs: dict[int, int] = {}
        self._tlist = truncated_table(table)
        self._views: dict[int, TwoValuedView] = {}
        self.max_width = max_width
        self.transcript = transcript if transcript is not None else Transcript()

    def _sign(self, k: int) -> int:
        if k not in self._signs:
            self._signs[k] = sign(self._table.system[k].evaluate(self._x))
        return self._signs[k]

    def view(self, k: int) -> TwoValuedView:
        if k not in self._views:
            self._views[k] = compatible_view(self._table, self._tlist[k - 1])
        return self._views[k]

    def truncated(self, i: int) -> int:
        if not 1 <= i <= len(self._tlist):
            raise IndexError(f"truncated index {i} out of range")
        answer = 1
        for T in self._tlist[:i]:
            if all(self._sign(k) == 0 for k, bit in enumerate(T) if not bit):
                answer = 0
                break
        self.transcript.record("truncated", {"i": i}, answer)
        return answer

    def product(self, i: int, k: int, choices: Sequence[int]) -> int:
        view = self.view(k)
        u = star_sequence(view.vectors, list(choices)[: i - 1], self.max_width)[i - 1]
        answer = 1
        for pos, bit in enumerate(u):
            if bit:
                answer *= self._sign(view.index_map[pos])
                if answer == 0:
                    break
        self.transcript.record("product", {"i": i, "k": k, "c": list(choices)}, answer)
        return answer


def truncated_rank_search(oracle: TestOracle, table: SignConditionTable) -> int:
    """Rank m of the input's truncated condition by binary search.

    The truncated test at i vanishes exactly when m <= i.
    """
    n = len(truncated_table(table))
    if n == 0:
        raise ValueError("empty table")
    if n == 1:
        return 1
    lo, hi = 1, n
    hi_confirmed = False
    while lo < hi:
        mid = (lo + hi) // 2
        if oracle.truncated(mid) == 0:
            hi = mid
            hi_confirmed = True
        else:
            lo = mid + 1
    if not hi_confirmed and oracle.truncated(hi) != 0:
        raise OracleInconsistency("no truncated condition of the table matches the input")
    return lo


def full_condition_search(oracle: TestOracle, view: TwoValuedView, k: int) -> list[int]:
    """Choice list that singles out the input's condition inside ``view``."""
    current = list(view.vectors)
    choices: list[int] = []
    while len(current) > 1:
        i = len(choices) + 1
        u = star_sequence(view.vectors, choices, oracle.max_width)[-1]
        s = oracle.product(i, k, choices)
        if s == 0:
            raise OracleInconsistency(f"product test {i} vanished on a nonzero support")
        b = 1 if s < 0 else 0
        current = [v for v in current if inner_product(u, v) == b]
        if not current:
            raise OracleInconsistency("no compatible condition matches the answers")
        choices.append(b)
    return choices


def recover_rank(choices: Sequence[int], view: TwoValuedView, table: SignConditionTable, max_width: int = DEFAULT_MAX_WIDTH) -> int:
    us = star_sequence(view.vectors, list(choices), max_width)
    hits = [
        rank
        for v, rank in zip(view.vectors, view.ranks)
        if all(inner_product(u, v) == c for u, c in zip(us, choices))
    ]
    if len(hits) != 1:
        raise OracleInconsistency(f"choice list matches {len(hits)} conditions, expected exactly one")
    return hits[0]


def replay_acceptance(c: AlgebraicCircuit, table: SignConditionTable, rank: int) -> int:
    """Run ``c`` level by level, reading each test result off the condition."""
    cond = table.condition(rank)
    index = {p: j for j, p in enumerate(table.system)}

    def outcome(gid: int, entry) -> int:
        j = index.get(entry)
        if j is None:
            raise LookupError(f"gate g{gid + 1} tests {entry}, which is not in the tested list")
        return 1 if cond[j] <= 0 else 0

    order = [g for level in slice_levels(c) for g in level]
    polys = _gate_polys(c, outcome, order)
    return int(polys[c.output].constant_term)


@dataclass
class TransferResult:
    truncated_rank: int
    choices: list[int]
    rank: int
    decision: int
    transcript: Transcript
    direct: int | None = None
    table_size: int = 0
    truncated_size: int = 0
    compatible_size: int = 0

    @property
    def agrees(self) -> bool:
        return self.direct is None or self.direct == self.decision

    def query_bound(self) -> int:
        return query_bound(self.truncated_size, self.compatible_size)


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 0 else 0


def query_bound(n_truncated: int, n_compatible: int) -> int:
    return _ceil_log2(n_truncated) + 3 * _ceil_log2(n_compatible + 1) + 4


def transfer_decide(
    c: AlgebraicCircuit,
    x: Sequence[Number],
    table: SignConditionTable | None = None,
    override: bool = False,
    prune: bool = False,
    max_tests: int = DEFAULT_MAX_TESTS,
    max_width: int = DEFAULT_MAX_WIDTH,
    check: bool = True,
) -> TransferResult:
    """Decide ``c`` at ``x`` using only oracle sign tests.

    Without ``table`` the circuit must have one input, and a complete table is
    built over its tested polynomials.  Tables that are not complete are
    refused unless ``override`` is set.  With ``check`` the result also
    carries the direct evaluation for comparison.
    """
    if len(x) != c.nvars:
        raise ValueError(f"circuit has {c.nvars} inputs, got {len(x)} values")
    tested = enumerate_tested_polynomials(c, prune=prune, max_tests=max_tests)
    if table is None:
        if c.nvars != 1:
            raise IncompleteTableError(
                "multivariate circuits need a witness-set table attested complete"
            )
        table = enumerate_sign_conditions(tested.polys)
    elif set(table.system) != set(tested.polys):
        raise ValueError("table system does not match the circuit's tested polynomials")
    if not table.complete and not override:
        raise IncompleteTableError("sign-condition table is not attested complete (use override)")

    oracle = TestOracle(table, x, max_width=max_width)
    tlist: list[Truncated] = truncated_table(table)
    m = truncated_rank_search(oracle, table)
    view = oracle.view(m)
    choices = full_condition_search(oracle, view, m)
    rank = recover_rank(choices, view, table, max_width)
    decision = replay_acceptance(c, table, rank)
    direct = eval_bss(c, x) if check else None
    return TransferResult(
        truncated_rank=m,
        choices=choices,
        rank=rank,
        decision=decision,
        transcript=oracle.transcript,
        direct=direct,
        table_size=len(table),
        truncated_size=len(tlist),
        compatible_size=len(view),
    )
