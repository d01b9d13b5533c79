"""The Euler multigraph and its exact path-count combinatorics.

Vertices live on levels n = 0, 1, 2, ... with columns 0 <= k <= n.  A vertex
(n, k) has k+1 parallel "left turn" edges to (n+1, k) and n-k+1 parallel
"right turn" edges to (n+1, k+1), so its out-degree is n+2.  The number of
root-to-(n, k) edge paths is the Eulerian number A(n, k), computed here with
arbitrary-precision integers via the recursion

    A(n+1, k) = (n-k+2) A(n, k-1) + (k+1) A(n, k),   A(0, 0) = 1.

Incoming edges of a vertex carry a total order (the in-rank): the right-turn
copies from (n-1, k-1) come first, in copy order, followed by the left-turn
copies from (n-1, k), in copy order.  This order drives the successor map in
the transform module.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum

from .errors import RootHasNoInEdges


class Turn(Enum):
    """Direction of an edge: LEFT keeps the column, RIGHT increments it."""

    LEFT = "L"
    RIGHT = "R"


@dataclass(frozen=True)
class Vertex:
    """A graph position (level, column) with 0 <= column <= level."""

    level: int
    column: int

    def __post_init__(self):
        if self.level < 0 or not 0 <= self.column <= self.level:
            raise ValueError(f"invalid vertex ({self.level},{self.column})")

    @property
    def out_degree(self) -> int:
        return self.level + 2

    @property
    def in_degree(self) -> int:
        """Number of incoming edges; 0 at the root, 1 on the boundary."""
        if self.level == 0:
            return 0
        if self.column in (0, self.level):
            return 1
        return self.level + 2

    def __repr__(self):
        return f"({self.level},{self.column})"


@dataclass(frozen=True)
class EdgeRef:
    """One edge of the multigraph: (source, turn direction, copy index).

    The copy index runs over the parallel edges of a bundle: 0..k for the
    left bundle out of (n, k), 0..n-k for the right bundle.  The target and
    the in-rank are derived, never stored.
    """

    source: Vertex
    turn: Turn
    copy: int

    def __post_init__(self):
        n, k = self.source.level, self.source.column
        size = k + 1 if self.turn is Turn.LEFT else n - k + 1
        if not 0 <= self.copy < size:
            raise ValueError(
                f"copy {self.copy} outside bundle of size {size} "
                f"({self.turn.value} out of {self.source})"
            )

    @property
    def target(self) -> Vertex:
        n, k = self.source.level, self.source.column
        return Vertex(n + 1, k if self.turn is Turn.LEFT else k + 1)

    @property
    def in_rank(self) -> int:
        """Position of this edge in the in-edge order of its target.

        Right-turn copies rank 0..m-c, left-turn copies follow, where (m, c)
        is the target.  Boundary targets have a single one-edge bundle.
        """
        m, c = self.target.level, self.target.column
        if self.turn is Turn.RIGHT:
            return self.copy
        return self.copy + (m - c + 1 if c >= 1 else 0)

    def __repr__(self):
        return f"{self.source}-{self.turn.value}{self.copy}"


def out_edges(v: Vertex) -> list[EdgeRef]:
    """All n+2 edges leaving v: left copies ascending, then right copies."""
    n, k = v.level, v.column
    left = [EdgeRef(v, Turn.LEFT, c) for c in range(k + 1)]
    right = [EdgeRef(v, Turn.RIGHT, c) for c in range(n - k + 1)]
    return left + right


def in_edges(v: Vertex) -> list[EdgeRef]:
    """All edges entering v, listed in increasing in-rank order."""
    n, k = v.level, v.column
    if n == 0:
        raise RootHasNoInEdges("the root (0,0) has no incoming edges")
    edges = []
    if k >= 1:
        src = Vertex(n - 1, k - 1)
        edges += [EdgeRef(src, Turn.RIGHT, c) for c in range(n - k + 1)]
    if k <= n - 1:
        src = Vertex(n - 1, k)
        edges += [EdgeRef(src, Turn.LEFT, c) for c in range(k + 1)]
    return edges


def in_edge_with_rank(v: Vertex, rank: int) -> EdgeRef:
    """The unique edge into v with the given in-rank, without building the list."""
    n, k = v.level, v.column
    if n == 0:
        raise RootHasNoInEdges("the root (0,0) has no incoming edges")
    if k >= 1:
        if rank <= n - k:
            return EdgeRef(Vertex(n - 1, k - 1), Turn.RIGHT, rank)
        return EdgeRef(Vertex(n - 1, k), Turn.LEFT, rank - (n - k + 1))
    return EdgeRef(Vertex(n - 1, 0), Turn.LEFT, rank)


class EulerianTriangle:
    """Memoized table of the path counts A(n, k).

    Rows are appended on demand and never mutated afterwards, so reads of
    already-computed rows are safe while an extension is in progress; the
    extension itself is serialized by a lock.
    """

    def __init__(self, n_max: int = 0):
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()
        if n_max > 0:
            self.extend_to(n_max)

    def extend_to(self, n: int) -> None:
        if len(self._rows) > n:
            return
        with self._lock:
            while len(self._rows) <= n:
                m = len(self._rows) - 1  # last computed level
                prev = self._rows[m]
                row = []
                for k in range(m + 2):
                    a = prev[k - 1] if 0 <= k - 1 <= m else 0
                    b = prev[k] if k <= m else 0
                    row.append((m - k + 2) * a + (k + 1) * b)
                self._rows.append(row)

    def value(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        self.extend_to(n)
        return self._rows[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        self.extend_to(n)
        return tuple(self._rows[n])

    @property
    def levels_computed(self) -> int:
        return len(self._rows) - 1


_TRIANGLE = EulerianTriangle()


def eulerian(n: int, k: int) -> int:
    """A(n, k): the number of root-to-(n, k) edge paths; 0 outside the triangle."""
    return _TRIANGLE.value(n, k)


def eulerian_row(n: int) -> tuple[int, ...]:
    """The full row A(n, 0..n)."""
    return _TRIANGLE.row(n)


def path_count_between(a: Vertex, b: Vertex) -> int:
    """Number of edge paths from a to b, counting parallel copies.

    Dynamic program over levels; 0 when b is unreachable from a.  With a
    equal to the root this reproduces eulerian(b.level, b.column).
    """
    if b.level < a.level:
        return 0
    counts = {a.column: 1}
    for lev in range(a.level, b.level):
        nxt: dict[int, int] = {}
        remaining = b.level - lev
        for c, v in counts.items():
            if c > b.column or b.column - c > remaining:
                # target column is no longer reachable from c; prune
                continue
            nxt[c] = nxt.get(c, 0) + v * (c + 1)
            nxt[c + 1] = nxt.get(c + 1, 0) + v * (lev - c + 1)
        counts = nxt
    return counts.get(b.column, 0)
