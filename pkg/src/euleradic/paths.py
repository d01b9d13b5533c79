"""Finite root-anchored paths and the Vershik order on them.

A path of length n starts at the root (0,0) and takes one edge per level.
It is stored as a tuple of (turn, copy) steps; the column sequence k_0..k_n
is derived: a left turn keeps the column, a right turn increments it.

Two same-length paths are compared at their largest index of disagreement.
If the edges there enter the same vertex, the in-rank order decides;
otherwise the paths are incomparable.  A path is maximal (minimal) when
every edge has the greatest (least) in-rank among the edges into its
target.  Note the all-left and all-right paths are both maximal and
minimal: their vertices have a single incoming edge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import IndexBeyondPath, LengthMismatch, TooLarge
from .graph import EdgeRef, Turn, Vertex, eulerian, in_edges

DEFAULT_ENUMERATION_CAP = 10**6

_TOKEN = re.compile(r"^[LR]\d+$")


class Order(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    INCOMPARABLE = 2


@dataclass(frozen=True)
class FinitePath:
    """An edge path from the root, as a tuple of (turn, copy) steps."""

    steps: tuple[tuple[Turn, int], ...] = ()

    def __post_init__(self):
        cols = [0]
        k = 0
        for i, (turn, copy) in enumerate(self.steps):
            size = k + 1 if turn is Turn.LEFT else i - k + 1
            if not 0 <= copy < size:
                raise ValueError(
                    f"step {i}: copy {copy} outside {turn.value} bundle "
                    f"of size {size} at ({i},{k})"
                )
            if turn is Turn.RIGHT:
                k += 1
            cols.append(k)
        object.__setattr__(self, "_columns", tuple(cols))

    def __len__(self) -> int:
        return len(self.steps)

    def column_at(self, m: int) -> int:
        """Column of the vertex this path passes through at level m."""
        if not 0 <= m <= len(self.steps):
            raise IndexBeyondPath(f"level {m} outside path of length {len(self)}")
        return self._columns[m]

    def vertex_at(self, m: int) -> Vertex:
        return Vertex(m, self.column_at(m))

    @property
    def terminal(self) -> Vertex:
        return Vertex(len(self.steps), self._columns[-1])

    def edge_at(self, i: int) -> EdgeRef:
        turn, copy = self.steps[i]
        return EdgeRef(Vertex(i, self._columns[i]), turn, copy)

    def edges(self) -> list[EdgeRef]:
        return [self.edge_at(i) for i in range(len(self.steps))]

    def prefix(self, m: int) -> "FinitePath":
        if not 0 <= m <= len(self.steps):
            raise IndexBeyondPath(f"level {m} outside path of length {len(self)}")
        return FinitePath(self.steps[:m])

    def extended(self, turn: Turn, copy: int) -> "FinitePath":
        return FinitePath(self.steps + ((turn, copy),))

    def to_text(self) -> str:
        """Canonical encoding: "R0.L1.R1"; the empty path encodes as ""."""
        return ".".join(f"{t.value}{c}" for t, c in self.steps)

    @classmethod
    def from_text(cls, text: str) -> "FinitePath":
        if text == "":
            return cls(())
        steps = []
        for tok in text.split("."):
            if not _TOKEN.match(tok):
                raise ValueError(f"bad path token {tok!r}")
            steps.append((Turn(tok[0]), int(tok[1:])))
        return cls(tuple(steps))

    def __repr__(self):
        return f"FinitePath({self.to_text()!r})"


def step_for_out_index(k: int, j: int) -> tuple[Turn, int]:
    """The (turn, copy) step with out-edge index j at a column-k vertex.

    Out-edges are indexed left copies 0..k first, then right copies.
    """
    if j <= k:
        return (Turn.LEFT, j)
    return (Turn.RIGHT, j - k - 1)


def path_from_out_indices(indices) -> FinitePath:
    """Build a path from its per-level out-edge indices j_m in [0, m+2)."""
    steps = []
    k = 0
    for j in indices:
        turn, copy = step_for_out_index(k, j)
        steps.append((turn, copy))
        if turn is Turn.RIGHT:
            k += 1
    return FinitePath(tuple(steps))


# --- extremal paths ---------------------------------------------------------


def _edge_is_maximal(level_to: int, col_to: int, turn: Turn, copy: int) -> bool:
    # into (m, c): the greatest in-edge is the left copy c when the left
    # bundle exists (c <= m-1); on the diagonal c == m the single right
    # edge is greatest by default.
    if col_to == level_to:
        return True
    return turn is Turn.LEFT and copy == col_to


def _edge_is_minimal(level_to: int, col_to: int, turn: Turn, copy: int) -> bool:
    # into (m, c): the least in-edge is the right copy 0 when c >= 1,
    # else the single left edge into (m, 0).
    if col_to == 0:
        return True
    return turn is Turn.RIGHT and copy == 0


def is_maximal(p: FinitePath) -> bool:
    """True iff every edge has the greatest in-rank into its target."""
    return all(
        _edge_is_maximal(i + 1, p.column_at(i + 1), turn, copy)
        for i, (turn, copy) in enumerate(p.steps)
    )


def is_minimal(p: FinitePath) -> bool:
    """True iff every edge has the least in-rank into its target."""
    return all(
        _edge_is_minimal(i + 1, p.column_at(i + 1), turn, copy)
        for i, (turn, copy) in enumerate(p.steps)
    )


def min_path_to(v: Vertex) -> FinitePath:
    """The unique minimal path into v: left copy 0 down to (n-k, 0), then
    right copy 0 along the diagonal climb."""
    n, k = v.level, v.column
    steps = ((Turn.LEFT, 0),) * (n - k) + ((Turn.RIGHT, 0),) * k
    return FinitePath(steps)


def max_path_to(v: Vertex) -> FinitePath:
    """The unique maximal path into v: right copy 0 up to (k, k), then left
    turns taking the top copy k at every level."""
    n, k = v.level, v.column
    steps = ((Turn.RIGHT, 0),) * k + ((Turn.LEFT, k),) * (n - k)
    return FinitePath(steps)


# --- order ------------------------------------------------------------------


def vershik_compare(p: FinitePath, q: FinitePath) -> Order:
    """Order of two same-length paths at the largest disagreement index."""
    if len(p) != len(q):
        raise LengthMismatch(f"lengths {len(p)} and {len(q)} differ")
    if p.steps == q.steps:
        return Order.EQUAL
    n = max(i for i in range(len(p)) if p.steps[i] != q.steps[i])
    if p.column_at(n + 1) != q.column_at(n + 1):
        return Order.INCOMPARABLE
    rp = p.edge_at(n).in_rank
    rq = q.edge_at(n).in_rank
    return Order.LESS if rp < rq else Order.GREATER


def enumerate_paths_to(v: Vertex, cap: int = DEFAULT_ENUMERATION_CAP) -> list[FinitePath]:
    """All paths into v in increasing Vershik order.

    The list has eulerian(n, k) entries; a TooLarge error guards against
    fibers beyond the cap.  Order is by final in-rank first, recursively.
    """
    total = eulerian(v.level, v.column)
    if total > cap:
        raise TooLarge(f"fiber of {v} has {total} paths, cap is {cap}")
    memo: dict[Vertex, list[tuple]] = {}

    def build(w: Vertex) -> list[tuple]:
        if w.level == 0:
            return [()]
        if w in memo:
            return memo[w]
        out = []
        for e in in_edges(w):
            step = (e.turn, e.copy)
            out.extend(pre + (step,) for pre in build(e.source))
        memo[w] = out
        return out

    return [FinitePath(steps) for steps in build(v)]
