"""Seeded random generation of inclusion-free instances.

All randomness comes from Python's ``random.Random`` (Mersenne Twister)
seeded explicitly, so a (seed, parameters) pair pins the instance down to the
byte.  ``gen_inclusion_free`` draws agent intervals with both endpoint
sequences non-decreasing, which guarantees inclusion-freeness by
construction, then repairs the sequence so the intervals cover every item.
``gen_planted`` additionally builds the instance around a known assignment,
so the optimum is bounded by the planted target from the right side.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .instance_model import (Agent, Assignment, ConvexInstance, Item, Mode,
                             assignment_from_positions)

MAX_DENOMINATOR = 12


def _random_value(rng: random.Random,
                  low: Fraction, high: Fraction) -> Fraction:
    """A uniform-ish rational in (low, high] with denominator <= 12."""
    for _ in range(64):
        den = rng.randint(1, MAX_DENOMINATOR)
        lo_num = (low * den).numerator // (low * den).denominator  # floor
        hi_scaled = high * den
        hi_num = hi_scaled.numerator // hi_scaled.denominator
        if lo_num + 1 > hi_num:
            continue
        return Fraction(rng.randint(lo_num + 1, hi_num), den)
    raise ValueError(f"no rational with denominator <= {MAX_DENOMINATOR} in ({low}, {high}]")


def _intervals(rng: random.Random, n: int, m: int) -> list[tuple[int, int]]:
    lows = sorted(rng.randint(1, m) for _ in range(n))
    highs = sorted(rng.randint(1, m) for _ in range(n))
    lows[0] = 1
    highs = [max(h, l) for h, l in zip(highs, lows)]
    # Close coverage gaps: each interval starts at or before the previous
    # right endpoint + 1.  This keeps both sequences non-decreasing.
    for i in range(1, n):
        if lows[i] > highs[i - 1] + 1:
            lows[i] = highs[i - 1] + 1
    highs[n - 1] = m
    for i in range(1, n):
        assert lows[i - 1] <= lows[i] and highs[i - 1] <= highs[i]
    return list(zip(lows, highs))


def gen_inclusion_free(seed: int, n: int, m: int,
                       value_range: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1)),
                       mode: Mode = Mode.MAXMIN) -> ConvexInstance:
    """A random valid inclusion-free instance with n agents and m items."""
    if n < 1 or m < n:
        raise ValueError(f"need n >= 1 and m >= n, got n={n} m={m}")
    rng = random.Random(seed)
    intervals = _intervals(rng, n, m)
    items = tuple(Item(f"x{i}", _random_value(rng, *value_range))
                  for i in range(1, m + 1))
    agents = tuple(Agent(f"p{j}", lo, hi) for j, (lo, hi) in enumerate(intervals, start=1))
    return ConvexInstance(mode, items, agents)


def gen_planted(seed: int, n: int, m: int, t: Fraction,
                mode: Mode = Mode.MAXMIN) -> tuple[ConvexInstance, Assignment]:
    """An instance with a planted assignment: every planted bundle has value
    >= t (Max-Min, so OPT >= t) or <= t (Min-Max, so OPT <= t).

    Items are laid out as contiguous runs, one per agent; each agent's
    interval contains its run and may stretch over the neighbours' items.
    Item values are shuffled within each run.
    """
    if n < 1 or m < n:
        raise ValueError(f"need n >= 1 and m >= n, got n={n} m={m}")
    t = Fraction(t)
    if t <= 0:
        raise ValueError(f"plant target must be positive, got {t}")
    rng = random.Random(seed)
    cuts = sorted(rng.sample(range(1, m), n - 1)) if n > 1 else []
    bounds = [0] + cuts + [m]
    runs = [(bounds[i] + 1, bounds[i + 1]) for i in range(n)]

    values: list[Optional[Fraction]] = [None] * (m + 1)
    for start, end in runs:
        size = end - start + 1
        if mode is Mode.MAXMIN:
            drawn = [_random_value(rng, Fraction(0), Fraction(1)) for _ in range(size - 1)]
            residual = t - sum(drawn, Fraction(0))
            last = _random_value(rng, Fraction(0), Fraction(1))
            drawn.append(max(last, residual))
        else:
            cap = t / size
            drawn = [_random_value(rng, Fraction(0), Fraction(1)) * cap for _ in range(size)]
        rng.shuffle(drawn)
        for offset, v in enumerate(drawn):
            values[start + offset] = v

    intervals = []
    prev_lo, prev_hi = 1, 0
    for start, end in runs:
        lo = max(prev_lo, start - rng.randint(0, start - 1))
        hi = max(prev_hi, min(m, end + rng.randint(0, m - end)))
        intervals.append((lo, hi))
        prev_lo, prev_hi = lo, hi

    items = tuple(Item(f"x{i}", values[i]) for i in range(1, m + 1))
    agents = tuple(Agent(f"p{j}", lo, hi) for j, (lo, hi) in enumerate(intervals, start=1))
    instance = ConvexInstance(mode, items, agents)
    planted = assignment_from_positions(
        instance, {j: range(runs[j][0], runs[j][1] + 1) for j in range(n)})
    return instance, planted
