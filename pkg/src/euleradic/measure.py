"""Edge weights, the symmetric measure, and exact distribution computations.

A weight system assigns a positive rational to every edge; the measure of a
length-n cylinder is the product of its edge weights.  The symmetric system
puts 1/(n+2) on every edge out of level n, so each length-n cylinder has
measure 1/(n+1)!.  Adic invariance of a weight system is equivalent to two
local conditions checked here exactly: parallel edges weigh the same, and
around every diamond the two route products agree (u1 v1 = u2 v2).

Under the symmetric measure the column sequence k_n is a Markov chain:

    P(k_{n+1} = k   | k_n = k) = (k+1)/(n+2)
    P(k_{n+1} = k+1 | k_n = k) = (n-k+1)/(n+2)

Everything below (column laws, moments of the turn surplus 2k_n - n, pair
drift, tail probabilities) is computed from this kernel or from the Eulerian
counts in exact rational arithmetic.  For tail probabilities at levels far
beyond the exact-DP budget, a certified enclosure runs the same recursion on
integer numerators with floor and ceil rounding, yielding rigorous rational
lower and upper bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Optional

import numpy as np

from .graph import EdgeRef, Turn, Vertex, eulerian, eulerian_row, out_edges
from .paths import FinitePath, enumerate_paths_to, is_maximal, is_minimal
from .transform import predecessor

EXACT_TAIL_BUDGET = 600  # largest level for the all-rational tail DP
ENCLOSURE_DENOM_BITS = 44  # fixed-point denominator 2**44 for the bounds DP
ENCLOSURE_LEVEL_CAP = 100_000  # keeps int64 products clear of overflow


# --- weight systems ----------------------------------------------------------


@dataclass(frozen=True)
class WeightSystem:
    """Positive rational edge weights, as a function of the edge."""

    label: str
    fn: Callable[[EdgeRef], Fraction]

    @classmethod
    def symmetric(cls) -> "WeightSystem":
        """The system with weight 1/(n+2) on every edge out of level n."""
        return cls("symmetric", lambda e: Fraction(1, e.source.level + 2))

    @classmethod
    def from_bundle_table(
        cls,
        table: Mapping[tuple[int, int, Turn], Fraction],
        label: str = "table",
    ) -> "WeightSystem":
        """Per-bundle weights keyed by (level, column, turn); parallel edges
        within a bundle are equal by construction."""

        def fn(e: EdgeRef) -> Fraction:
            return Fraction(table[(e.source.level, e.source.column, e.turn)])

        return cls(label, fn)

    @classmethod
    def from_function(
        cls, fn: Callable[[EdgeRef], Fraction], label: str = "custom"
    ) -> "WeightSystem":
        return cls(label, fn)

    def weight(self, e: EdgeRef) -> Fraction:
        w = Fraction(self.fn(e))
        if w <= 0:
            raise ValueError(f"non-positive weight {w} on {e}")
        return w


def cylinder_measure(ws: WeightSystem, p: FinitePath) -> Fraction:
    """Product of the edge weights along p; 1 for the empty path."""
    total = Fraction(1)
    for e in p.edges():
        total *= ws.weight(e)
    return total


# --- invariance checks -------------------------------------------------------


@dataclass(frozen=True)
class InvarianceReport:
    label: str
    n_max: int
    parallel_checked: int
    diamonds_checked: int
    violation: Optional[str]

    @property
    def ok(self) -> bool:
        return self.violation is None


def check_invariance_conditions(ws: WeightSystem, n_max: int) -> InvarianceReport:
    """Verify the two local invariance conditions for all levels below n_max.

    (a) within every bundle out of a vertex at level < n_max, all parallel
    copies carry one weight; (b) for every diamond with top vertex at level
    n < n_max, the left-then-right product equals the right-then-left one.
    Returns the first violation found, as data.
    """
    parallel = 0
    diamonds = 0
    for n in range(n_max):
        for k in range(n + 1):
            v = Vertex(n, k)
            for turn in (Turn.LEFT, Turn.RIGHT):
                bundle = [e for e in out_edges(v) if e.turn is turn]
                w0 = ws.weight(bundle[0])
                parallel += 1
                for e in bundle[1:]:
                    if ws.weight(e) != w0:
                        return InvarianceReport(
                            ws.label, n_max, parallel, diamonds,
                            f"parallel edges differ in {turn.value} bundle "
                            f"out of {v}",
                        )
    for n in range(n_max):
        for k in range(n + 1):
            top = Vertex(n, k)
            # two routes to the common grandchild (n+2, k+1)
            u1 = ws.weight(EdgeRef(top, Turn.LEFT, 0))
            v1 = ws.weight(EdgeRef(Vertex(n + 1, k), Turn.RIGHT, 0))
            u2 = ws.weight(EdgeRef(top, Turn.RIGHT, 0))
            v2 = ws.weight(EdgeRef(Vertex(n + 1, k + 1), Turn.LEFT, 0))
            diamonds += 1
            if u1 * v1 != u2 * v2:
                return InvarianceReport(
                    ws.label, n_max, parallel, diamonds,
                    f"diamond law fails at top {top}: "
                    f"{u1}*{v1} != {u2}*{v2}",
                )
    return InvarianceReport(ws.label, n_max, parallel, diamonds, None)


@dataclass(frozen=True)
class PushforwardReport:
    level: int
    cylinders: int
    boundary_minimal: int
    boundary_maximal: int
    mismatches: int
    first_mismatch: Optional[str]

    @property
    def ok(self) -> bool:
        return (
            self.mismatches == 0
            and self.boundary_minimal == self.level + 1
            and self.boundary_maximal == self.level + 1
        )


def pushforward_check(n: int, ws: Optional[WeightSystem] = None) -> PushforwardReport:
    """Exact cylinder-level invariance at length n.

    Every non-minimal cylinder C has T^{-1}C equal to the predecessor
    cylinder up to the extremal boundary, so its measure must match the
    predecessor's exactly.  The n+1 minimal and n+1 maximal cylinders are
    the boundary; their counts are reported rather than matched.
    """
    if ws is None:
        ws = WeightSystem.symmetric()
    cylinders = 0
    boundary_min = 0
    boundary_max = 0
    mismatches = 0
    first: Optional[str] = None
    for k in range(n + 1):
        for p in enumerate_paths_to(Vertex(n, k)):
            cylinders += 1
            if is_maximal(p):
                boundary_max += 1
            if is_minimal(p):
                boundary_min += 1
                continue
            q = predecessor(p)
            if cylinder_measure(ws, q) != cylinder_measure(ws, p):
                mismatches += 1
                if first is None:
                    first = f"measure of {p.to_text()} != predecessor {q.to_text()}"
    return PushforwardReport(n, cylinders, boundary_min, boundary_max, mismatches, first)


# --- the column chain --------------------------------------------------------


def transition_probs(n: int, k: int) -> tuple[Fraction, Fraction]:
    """(P(stay), P(increment)) for the column chain at (n, k)."""
    if not 0 <= k <= n:
        raise ValueError(f"column {k} outside level {n}")
    return Fraction(k + 1, n + 2), Fraction(n - k + 1, n + 2)


@dataclass(frozen=True)
class ColumnDistribution:
    """Exact law of the column k_n under the symmetric measure."""

    level: int
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if sum(self.probs) != 1:
            raise ValueError(f"column law at level {self.level} does not sum to 1")

    def tail(self, epsilon: Fraction) -> Fraction:
        """P(|2 k_n - n| >= epsilon * n), exactly."""
        n = self.level
        eps = Fraction(epsilon)
        return sum(
            (p for k, p in enumerate(self.probs) if abs(2 * k - n) >= eps * n),
            Fraction(0),
        )


def column_distribution(n: int) -> ColumnDistribution:
    """Combinatorial route: P(k_n = k) = A(n, k) / (n+1)!."""
    fact = factorial(n + 1)
    row = eulerian_row(n)
    return ColumnDistribution(n, tuple(Fraction(a, fact) for a in row))


def column_distribution_dp(n: int) -> ColumnDistribution:
    """Kernel route: push the law forward level by level with transition_probs.

    Kept deliberately independent of the Eulerian triangle so the two
    routes cross-check each other.
    """
    probs = [Fraction(1)]
    for m in range(n):
        nxt = [Fraction(0)] * (m + 2)
        for k, p in enumerate(probs):
            stay, step = transition_probs(m, k)
            nxt[k] += p * stay
            nxt[k + 1] += p * step
        probs = nxt
    return ColumnDistribution(n, tuple(probs))


# --- exact moments of the turn surplus ---------------------------------------


@dataclass(frozen=True)
class MomentRow:
    """Exact moments at one level.

    surplus is 2 k_n - n, the number of right turns minus left turns;
    scaled is (n+1) * surplus, whose increments between consecutive levels
    are the martingale increments; increment_sq is E of the squared
    increment, None at level 0 where no increment exists.
    """

    level: int
    surplus_mean: Fraction
    surplus_var: Fraction
    scaled_sq: Fraction
    increment_sq: Optional[Fraction]


def exact_moments(n_max: int) -> list[MomentRow]:
    """Moment table for levels 0..n_max via integer sums over Eulerian rows.

    The squared-increment column comes from the joint law of (k_{n-1}, k_n)
    under the kernel, not from any closed form.
    """
    rows = []
    for n in range(n_max + 1):
        fact = factorial(n + 1)
        row = eulerian_row(n)
        s1 = sum(a * (2 * k - n) for k, a in enumerate(row))
        s2 = sum(a * (2 * k - n) ** 2 for k, a in enumerate(row))
        mean = Fraction(s1, fact)
        var = Fraction(s2, fact) - mean * mean
        scaled_sq = Fraction((n + 1) ** 2 * s2, fact)
        inc = None
        if n >= 1:
            prev = eulerian_row(n - 1)
            total = 0
            for k, a in enumerate(prev):
                s_prev = n * (2 * k - (n - 1))
                x_stay = (n + 1) * (2 * k - n) - s_prev
                x_step = (n + 1) * (2 * (k + 1) - n) - s_prev
                # kernel at level n-1: stay weight k+1, step weight n-k,
                # denominator n+1; joint denominator is (n+1)!
                total += a * ((k + 1) * x_stay**2 + (n - k) * x_step**2)
            inc = Fraction(total, fact)
        rows.append(MomentRow(n, mean, var, scaled_sq, inc))
    return rows


def pair_drift(n: int, k: int, k2: int) -> Fraction:
    """Exact one-step expected change of |k_n - k_n'| for independent paths.

    Computed from the four turn combinations of the product kernel; no
    closed form is assumed here.
    """
    stay1, step1 = transition_probs(n, k)
    stay2, step2 = transition_probs(n, k2)
    gap = abs(k - k2)
    drift = Fraction(0)
    for d1, p1 in ((0, stay1), (1, step1)):
        for d2, p2 in ((0, stay2), (1, step2)):
            drift += p1 * p2 * (abs((k + d1) - (k2 + d2)) - gap)
    return drift


# --- tail probabilities ------------------------------------------------------


def column_tail(n: int, epsilon) -> Fraction:
    """Exact P(|2 k_n - n| >= epsilon n) from the Eulerian row.

    Only for n within EXACT_TAIL_BUDGET; the row sums are integers, so one
    division at the end keeps this cheap.
    """
    if n > EXACT_TAIL_BUDGET:
        raise ValueError(
            f"exact tail limited to n <= {EXACT_TAIL_BUDGET}; "
            f"use column_tail_bounds for n = {n}"
        )
    eps = Fraction(epsilon)
    row = eulerian_row(n)
    hits = sum(a for k, a in enumerate(row) if abs(2 * k - n) >= eps * n)
    return Fraction(hits, factorial(n + 1))


def column_tail_bounds(
    n: int, epsilon, denom_bits: int = ENCLOSURE_DENOM_BITS
) -> tuple[Fraction, Fraction]:
    """Certified rational bounds lo <= P(|2 k_n - n| >= epsilon n) <= hi.

    Runs the column-chain recursion twice on integer numerators over the
    fixed denominator 2**denom_bits, rounding down for the lower bound and
    up for the upper.  Rounding never cancels, so the two runs bracket the
    exact law pointwise; the bracket width stays below (n+1)^2 / 2**denom_bits
    because each level adds at most one unit of numerator per entry.
    """
    if n > ENCLOSURE_LEVEL_CAP:
        raise ValueError(f"enclosure DP capped at n = {ENCLOSURE_LEVEL_CAP}")
    denom = 1 << denom_bits
    # int64 safety: entries stay near denom, coefficients below n+2
    if (denom + (n + 1) ** 2) * (n + 2) * 2 >= 2**63:
        raise ValueError("denominator too large for int64 products at this level")
    def advance(cur: np.ndarray, m: int, round_up: bool) -> np.ndarray:
        ks = np.arange(m + 2, dtype=np.int64)
        stay = np.zeros(m + 2, dtype=np.int64)
        stay[: m + 1] = cur
        step = np.zeros(m + 2, dtype=np.int64)
        step[1:] = cur
        numer = stay * (ks + 1) + step * (m - ks + 2)
        if round_up:
            numer += m + 1
        return numer // (m + 2)

    lo_num = np.array([denom], dtype=np.int64)
    hi_num = np.array([denom], dtype=np.int64)
    for m in range(n):
        lo_num = advance(lo_num, m, round_up=False)
        hi_num = advance(hi_num, m, round_up=True)
    eps = Fraction(epsilon)
    ks = np.arange(n + 1)
    mask = np.abs(2 * ks - n) * eps.denominator >= eps.numerator * n
    lo = Fraction(int(lo_num[mask].sum()), denom)
    hi = Fraction(int(hi_num[mask].sum()), denom)
    return lo, min(hi, Fraction(1))
