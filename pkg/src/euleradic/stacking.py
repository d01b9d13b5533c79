"""Cutting and stacking on [0,1): stage layouts and the interval map.

Stage n assigns each length-n path a half-open interval of width 1/(n+1)!.
Stage 0 is the whole of [0,1) for the empty path; to pass from stage n to
n+1, the interval of a path at a column-k vertex is cut into n+2 equal
slices, and slice j (counted from the left) goes to the path extended by
out-edge j, in the canonical out-edge order: left copies ascending, then
right copies ascending.  The convention is frozen by a golden test; any
fixed choice gives an isomorphic system.

The stage-n interval map translates each interval onto the interval of the
successor path, and is undefined on the n+1 intervals of maximal paths (the
stack tops).  Endpoints are exact rationals; internally the descent runs on
integer numerators over (n+1)!.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Optional

from .errors import TooLarge
from .graph import Turn, eulerian
from .paths import DEFAULT_ENUMERATION_CAP, FinitePath, is_maximal, step_for_out_index
from .transform import successor


def _out_index(k: int, turn: Turn, copy: int) -> int:
    return copy if turn is Turn.LEFT else k + 1 + copy


def _lo_numerator(p: FinitePath) -> int:
    """Left endpoint of p's interval, as a numerator over (len(p)+1)!."""
    n = len(p)
    width = factorial(n + 1)
    lo = 0
    k = 0
    for m, (turn, copy) in enumerate(p.steps):
        width //= m + 2
        lo += _out_index(k, turn, copy) * width
        if turn is Turn.RIGHT:
            k += 1
    return lo


def decode_path(p: FinitePath) -> tuple[Fraction, Fraction]:
    """The half-open interval [lo, hi) assigned to p at stage len(p)."""
    den = factorial(len(p) + 1)
    lo = _lo_numerator(p)
    return Fraction(lo, den), Fraction(lo + 1, den)


def encode_point(u, n: int) -> FinitePath:
    """The unique length-n path whose stage-n interval contains u."""
    u = Fraction(u)
    if not 0 <= u < 1:
        raise ValueError(f"point {u} outside [0,1)")
    den = factorial(n + 1)
    # descend on integers: with u*den = p/q, the slice index at each level
    # is floor((p/q - lo)/width) = (p - lo*q) // (q*width)
    t = u * den
    p, q = t.numerator, t.denominator
    lo = 0
    width = den
    k = 0
    steps = []
    for m in range(n):
        width //= m + 2
        j = min((p - lo * q) // (q * width), m + 1)
        lo += j * width
        turn, copy = step_for_out_index(k, j)
        steps.append((turn, copy))
        if turn is Turn.RIGHT:
            k += 1
    return FinitePath(tuple(steps))


@dataclass(frozen=True)
class StackLayout:
    """The stage-n assignment of length-n paths to intervals.

    The bijection is realized arithmetically: interval_of and path_at run
    an O(n) descent instead of materializing (n+1)! entries, and
    iter_intervals walks the intervals left to right on demand.
    """

    stage: int

    @property
    def interval_width(self) -> Fraction:
        return Fraction(1, factorial(self.stage + 1))

    def interval_of(self, p: FinitePath) -> tuple[Fraction, Fraction]:
        if len(p) != self.stage:
            raise ValueError(f"path length {len(p)} != stage {self.stage}")
        return decode_path(p)

    def path_at(self, u) -> FinitePath:
        return encode_point(u, self.stage)

    def iter_intervals(self) -> Iterator[tuple[FinitePath, Fraction, Fraction]]:
        """All (path, lo, hi) triples in left-to-right interval order."""
        n = self.stage
        den = factorial(n + 1)

        def walk(steps: list, k: int, m: int, lo: int, width: int):
            if m == n:
                yield FinitePath(tuple(steps)), Fraction(lo, den), Fraction(lo + 1, den)
                return
            sub = width // (m + 2)
            for j in range(m + 2):
                turn, copy = step_for_out_index(k, j)
                steps.append((turn, copy))
                yield from walk(steps, k + (turn is Turn.RIGHT), m + 1, lo + j * sub, sub)
                steps.pop()

        yield from walk([], 0, 0, 0, den)

    def stack_heights(self) -> dict[int, int]:
        """Number of intervals per terminal column: A(stage, k)."""
        return {k: eulerian(self.stage, k) for k in range(self.stage + 1)}


def build_stage(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> StackLayout:
    """The stage-n layout; refuses stages with more than cap intervals."""
    if factorial(n + 1) > cap:
        raise TooLarge(f"stage {n} has {factorial(n + 1)} intervals, cap is {cap}")
    return StackLayout(n)


def stage_map(layout: StackLayout, u) -> Optional[Fraction]:
    """Stage-n approximation of the interval map at the point u.

    Translates u from its interval onto the successor path's interval at
    the same relative offset; None (undefined) on the top of each stack,
    that is when u lies in a maximal path's interval.
    """
    u = Fraction(u)
    p = layout.path_at(u)
    if is_maximal(p):
        return None
    den = factorial(layout.stage + 1)
    shift = _lo_numerator(successor(p)) - _lo_numerator(p)
    return u + Fraction(shift, den)
