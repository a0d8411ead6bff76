"""Rounding schemes, value classification, and configuration vectors."""

import math
import random
from fractions import Fraction

import pytest

from convalloc import (input_vector, remainder, round_instance,
                       round_value, scale, scheme, vector_leq)
from convalloc.instance_model import full_subgraph
from convalloc.rounding import Direction


def test_scheme_category_counts():
    assert scheme(4, Direction.UP).C == 7
    assert scheme(10, Direction.UP).C == 25
    s = scheme(4, Direction.UP)
    assert s.grid[6] == Fraction(1, 4) * Fraction(5, 4) ** 7


def test_scheme_rejects_small_k():
    with pytest.raises(ValueError):
        scheme(3, Direction.UP)


def test_category_count_matches_log_formula():
    for k in range(4, 65):
        s = scheme(k, Direction.DOWN)
        # independent derivation, with exact verification at the boundary
        approx = math.ceil(math.log(k) / math.log(1 + 1 / k))
        assert abs(s.C - approx) <= 1
        ratio = Fraction(k + 1, k)
        assert ratio ** s.C >= k > ratio ** (s.C - 1)


def test_grid_strictly_increasing_above_threshold():
    for k in (4, 8, 10):
        s = scheme(k, Direction.UP)
        assert s.grid[0] > Fraction(1, k)
        assert all(a < b for a, b in zip(s.grid, s.grid[1:]))


def test_round_value_examples():
    up = scheme(4, Direction.UP)
    down = scheme(4, Direction.DOWN)
    assert round_value(Fraction(1, 10), up) == (Fraction(1, 10), True, None)
    assert round_value(Fraction(3, 10), up) == (Fraction(5, 16), False, 1)
    # 3/10 lies in [1/4, 5/16): rounds down to exactly 1/4 and behaves as a
    # small job from then on
    assert round_value(Fraction(3, 10), down) == (Fraction(1, 4), True, None)
    assert round_value(Fraction(1, 3), down) == (Fraction(5, 16), False, 1)


def test_round_value_domain():
    s = scheme(4, Direction.UP)
    with pytest.raises(ValueError):
        round_value(Fraction(0), s)
    with pytest.raises(ValueError):
        round_value(Fraction(3, 2), s)


@pytest.mark.parametrize("k", [4, 5, 8, 16, 64])
def test_rounding_ratio_bounds(k):
    rng = random.Random(k)
    up = scheme(k, Direction.UP)
    down = scheme(k, Direction.DOWN)
    values = [Fraction(rng.randint(1, 420), 420) for _ in range(300)]
    values += [Fraction(1), Fraction(1, k), up.grid[0], up.grid[-1] / (k + 1) * k]
    for v in values:
        rv, _, _ = round_value(v, up)
        assert 1 <= rv / v < 1 + Fraction(1, k)
        rv, _, _ = round_value(v, down)
        assert Fraction(k, k + 1) < rv / v <= 1


def test_input_vector_e1(e1):
    s = scheme(10, Direction.UP)
    rd = round_instance(e1, s)
    nu = input_vector(full_subgraph(rd.instance), s)
    assert nu[0] == 15          # fifteen circles of 1/10 make 15 units
    assert nu[10] == 6          # 1/4 rounds up to (1/10)(11/10)^10
    assert sum(nu[1:]) == 6


def test_input_vector_empty(e1):
    s = scheme(10, Direction.UP)
    rd = round_instance(e1, s)
    sub = remainder(rd.instance, range(1, 22), 0)
    assert input_vector(sub, s) == s.zero_vector()


def test_input_vector_of_peeled_remainder(e1, e1_assignment_1):
    s = scheme(10, Direction.UP)
    rd = round_instance(e1, s)
    removed = set()
    for aid in ("p2", "p3"):
        removed |= {e1.item_index(x) for x in e1_assignment_1.bundle_map()[aid]}
    nu = input_vector(remainder(rd.instance, removed, 1), s)
    assert nu[0] == 5 and sum(nu[1:]) == 2


def test_input_vector_monotone(e1):
    s = scheme(10, Direction.UP)
    rd = round_instance(e1, s)
    rng = random.Random(1)
    for _ in range(30):
        a = set(rng.sample(range(1, 22), rng.randint(0, 21)))
        b = a | set(rng.sample(range(1, 22), rng.randint(0, 21)))
        nu_a = input_vector(remainder(rd.instance, set(range(1, 22)) - a, 2), s)
        nu_b = input_vector(remainder(rd.instance, set(range(1, 22)) - b, 2), s)
        assert vector_leq(nu_a, nu_b)


def test_distinct_big_values_and_vector_count_bounds(e1):
    s = scheme(10, Direction.UP)
    rd = round_instance(e1, s)
    distinct_big = {rd.value_at(p) for p in range(1, 22) if not rd.small[p - 1]}
    assert len(distinct_big) <= s.C
    nu = input_vector(full_subgraph(rd.instance), s)
    assert all(c <= e1.m for c in nu)
    closure = 1
    for c in nu:
        closure *= c + 1
    assert closure <= (e1.m + 1) ** (s.C + 1)


def test_minmax_scaling_then_rounding(m1):
    scaled = scale(m1, Fraction(11, 10))
    rd = round_instance(scaled, scheme(8, Direction.DOWN))
    for p in range(1, 5):
        assert rd.value_at(p) <= scaled.value_at(p)
        assert rd.value_at(p) / scaled.value_at(p) > Fraction(8, 9)
