"""The adic transformation on finite paths: successor, predecessor, orbits.

The successor of a non-maximal path bumps its first non-maximal edge to the
next in-rank into the same target and resets everything below to the minimal
path into the new source; edges above stay fixed, so the terminal vertex is
preserved.  Orbit positions within a fiber are ranked combinatorially:
rank(p) counts the paths into the same terminal vertex that are strictly
smaller, via the Eulerian counts of the sources of lower-ranked in-edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MaximalPath, MinimalPath, OrbitOverflow
from .graph import Turn, Vertex, eulerian, in_edge_with_rank
from .paths import (
    FinitePath,
    _edge_is_maximal,
    _edge_is_minimal,
    max_path_to,
    min_path_to,
)


def successor(p: FinitePath) -> FinitePath:
    """The next path into the same terminal vertex in Vershik order."""
    for j, (turn, copy) in enumerate(p.steps):
        c = p.column_at(j + 1)
        if _edge_is_maximal(j + 1, c, turn, copy):
            continue
        target = Vertex(j + 1, c)
        old = p.edge_at(j)
        bumped = in_edge_with_rank(target, old.in_rank + 1)
        prefix = min_path_to(bumped.source)
        steps = prefix.steps + ((bumped.turn, bumped.copy),) + p.steps[j + 1 :]
        return FinitePath(steps)
    raise MaximalPath(f"no successor: {p.to_text()!r} is maximal")


def predecessor(p: FinitePath) -> FinitePath:
    """The inverse of successor: bump the first non-minimal edge down and
    put the maximal path below the new source."""
    for j, (turn, copy) in enumerate(p.steps):
        c = p.column_at(j + 1)
        if _edge_is_minimal(j + 1, c, turn, copy):
            continue
        target = Vertex(j + 1, c)
        old = p.edge_at(j)
        dropped = in_edge_with_rank(target, old.in_rank - 1)
        prefix = max_path_to(dropped.source)
        steps = prefix.steps + ((dropped.turn, dropped.copy),) + p.steps[j + 1 :]
        return FinitePath(steps)
    raise MinimalPath(f"no predecessor: {p.to_text()!r} is minimal")


def orbit_rank(p: FinitePath) -> int:
    """Index of p in the Vershik-sorted fiber of its terminal vertex.

    For each level, every in-edge of the target ranked below p's edge
    contributes the full count of paths into that edge's source.
    """
    rank = 0
    for j, (turn, copy) in enumerate(p.steps):
        m, c = j + 1, p.column_at(j + 1)
        # sources: right-turn copies come from (m-1, c-1), left from (m-1, c)
        if turn is Turn.RIGHT:
            rank += copy * eulerian(m - 1, c - 1)
        else:
            if c >= 1:
                rank += (m - c + 1) * eulerian(m - 1, c - 1)
            rank += copy * eulerian(m - 1, c)
    return rank


def path_with_rank(v: Vertex, rank: int) -> FinitePath:
    """The unique path into v with the given orbit rank (inverse of orbit_rank)."""
    total = eulerian(v.level, v.column)
    if not 0 <= rank < total:
        raise OrbitOverflow(rank, total)
    steps: list[tuple[Turn, int]] = []
    m, c, t = v.level, v.column, rank
    while m > 0:
        right_block = eulerian(m - 1, c - 1) if c >= 1 else 0
        right_total = (m - c + 1) * right_block
        if c >= 1 and t < right_total:
            copy, t = divmod(t, right_block)
            steps.append((Turn.RIGHT, copy))
            m, c = m - 1, c - 1
        else:
            t -= right_total
            left_block = eulerian(m - 1, c)
            copy, t = divmod(t, left_block)
            steps.append((Turn.LEFT, copy))
            m = m - 1
    return FinitePath(tuple(reversed(steps)))


def iterate(p: FinitePath, steps: int) -> FinitePath:
    """Apply the successor map `steps` times (negative for predecessor).

    Raises OrbitOverflow when the target rank leaves [0, A(n,k)-1]; the
    orbit of a fiber is a finite segment, not a cycle.
    """
    if steps == 0:
        return p
    v = p.terminal
    total = eulerian(v.level, v.column)
    target = orbit_rank(p) + steps
    if not 0 <= target < total:
        raise OrbitOverflow(target, total)
    return path_with_rank(v, target)


@dataclass(frozen=True)
class OrbitPosition:
    """A path together with its rank inside its fiber (tower coordinates)."""

    path: FinitePath
    rank: int

    @classmethod
    def of(cls, path: FinitePath) -> "OrbitPosition":
        return cls(path, orbit_rank(path))

    @property
    def fiber_size(self) -> int:
        v = self.path.terminal
        return eulerian(v.level, v.column)
