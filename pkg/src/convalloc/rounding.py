"""Scaling-relative classification and rounding of item values.

For an error parameter k >= 4, values (already scaled into (0, 1]) are split
into *small* (<= 1/k, kept exact) and *big* (> 1/k, snapped onto the geometric
grid q_tau = (1/k)(1+1/k)^tau).  Max-Min instances round up to the next grid
point, Min-Max instances round down.  The resulting per-category counts plus
the small mass expressed in units of 1/k form the configuration vectors the
dynamic program runs on.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .instance_model import ConvexInstance, Item, Mode, Subgraph


class Direction(Enum):
    UP = "up"      # Max-Min
    DOWN = "down"  # Min-Max


def direction_for(mode: Mode) -> Direction:
    return Direction.UP if mode is Mode.MAXMIN else Direction.DOWN


InputVector = tuple[int, ...]


@dataclass(frozen=True)
class RoundingScheme:
    k: int
    direction: Direction
    C: int
    grid: tuple[Fraction, ...]  # q_1 .. q_C, strictly increasing, q_1 > 1/k

    @property
    def small_threshold(self) -> Fraction:
        return Fraction(1, self.k)

    def zero_vector(self) -> InputVector:
        return (0,) * (self.C + 1)


def scheme(k: int, direction: Direction) -> RoundingScheme:
    """Build the rounding scheme for error parameter k (k >= 4).

    The category count is C = ceil(log k / log(1+1/k)), computed exactly as
    the least C with (1+1/k)^C >= k; it never exceeds k^1.4.
    """
    if k < 4:
        raise ValueError(f"error parameter k must be >= 4, got {k}")
    ratio = Fraction(k + 1, k)
    c = 0
    power = Fraction(1)
    while power < k:
        power *= ratio
        c += 1
    grid = []
    q = Fraction(1, k)
    for _ in range(c):
        q *= ratio
        grid.append(q)
    # Note: C stays below k^1.4 for every k >= 5; at exactly k = 4 the
    # ceiling pushes C to 7, a hair over 4^1.4 ~ 6.96.
    return RoundingScheme(k, direction, c, tuple(grid))


@dataclass(frozen=True)
class RoundedInstance:
    """An instance with values snapped per the scheme, plus classification.

    ``instance`` carries the rounded values (same ids, order, agents, mode as
    ``original``).  ``small[i]`` / ``category[i]`` classify 1-based position
    i+1: small items keep their value, big items carry the 1-based index of
    their grid value.  A Min-Max big value in (1/k, q_1) rounds down to
    exactly 1/k and is reclassified small (it is value-interchangeable with
    small jobs from then on).
    """

    original: ConvexInstance
    instance: ConvexInstance
    scheme: RoundingScheme
    small: tuple[bool, ...]
    category: tuple[Optional[int], ...]

    @property
    def mode(self) -> Mode:
        return self.instance.mode

    def value_at(self, pos: int) -> Fraction:
        return self.instance.value_at(pos)


def round_value(value: Fraction, sch: RoundingScheme) -> tuple[Fraction, bool, Optional[int]]:
    """Round one value; returns (rounded, is_small, category)."""
    if not 0 < value <= 1:
        raise ValueError(f"value {value} outside (0, 1]; scale the instance first")
    if value <= sch.small_threshold:
        return value, True, None
    if sch.direction is Direction.UP:
        # value in (q_{tau}, q_{tau+1}] snaps to q_{tau+1}
        idx = bisect_left(sch.grid, value)
        return sch.grid[idx], False, idx + 1
    idx = bisect_right(sch.grid, value) - 1
    if idx < 0:
        # big value below q_1 rounds down to exactly 1/k: small from now on
        return sch.small_threshold, True, None
    return sch.grid[idx], False, idx + 1


def round_instance(instance: ConvexInstance, sch: RoundingScheme) -> RoundedInstance:
    """Round every item value; order, ids, agents and mode are unchanged."""
    rounded_items = []
    smalls = []
    cats: list[Optional[int]] = []
    for it in instance.items:
        rv, is_small, cat = round_value(it.value, sch)
        rounded_items.append(Item(it.id, rv))
        smalls.append(is_small)
        cats.append(cat)
    rounded = ConvexInstance(instance.mode, tuple(rounded_items), instance.agents)
    return RoundedInstance(instance, rounded, sch, tuple(smalls), tuple(cats))


def small_units(total: Fraction, sch: RoundingScheme) -> int:
    """The nu_0 coordinate for a given small mass.

    Max-Min: the unique nu_0 with total in ((nu_0-1)/k, nu_0/k]; Min-Max:
    total in [nu_0/k, (nu_0+1)/k).  Zero mass gives 0 in both modes.
    """
    if total == 0:
        return 0
    scaled = total * sch.k
    if sch.direction is Direction.UP:
        return -((-scaled.numerator) // scaled.denominator)  # ceil
    return scaled.numerator // scaled.denominator            # floor


def input_vector(subgraph: Subgraph, sch: RoundingScheme) -> InputVector:
    """Configuration vector (nu_0, nu_1, ..., nu_C) of a rounded subgraph.

    The subgraph's items must carry rounded values: big values must sit
    exactly on the grid.
    """
    counts = [0] * (sch.C + 1)
    small_total = Fraction(0)
    inst = subgraph.instance
    for pos in subgraph.items:
        v = inst.value_at(pos)
        if v <= sch.small_threshold:
            small_total += v
            continue
        idx = bisect_left(sch.grid, v)
        if idx >= sch.C or sch.grid[idx] != v:
            raise ValueError(f"item value {v} at position {pos} is not on the rounded grid")
        counts[idx + 1] += 1
    counts[0] = small_units(small_total, sch)
    return tuple(counts)


def vector_leq(a: InputVector, b: InputVector) -> bool:
    return all(x <= y for x, y in zip(a, b))
