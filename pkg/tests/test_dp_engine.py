"""Reconstruction, feasibility, and the forward/backward dynamic program."""

from fractions import Fraction

import pytest

from convalloc import (Agent, ConvexInstance, Item, Mode, backward,
                       feasible, forward, retrieve, round_instance, scale,
                       scheme, solve_rounded, vector_leq, verify)
from convalloc.dp_engine import trace_lines
from convalloc.instance_model import full_subgraph, lexicographic_order
from convalloc.rounding import direction_for, input_vector


def rounded(instance, k):
    return round_instance(instance, scheme(k, direction_for(instance.mode)))


def vec(sch, nu0, **cats):
    out = [0] * (sch.C + 1)
    out[0] = nu0
    for cat, count in cats.items():
        out[int(cat)] = count
    return tuple(out)


def test_retrieve_example_remainder(e1):
    rd = rounded(e1, 10)
    sub = retrieve(rd, vec(rd.scheme, 5, **{"10": 2}), 1)
    assert sub is not None
    assert sorted(sub.items) == [1, 2, 3, 4, 5, 6, 7]   # s1 s2 c1..c5


def test_retrieve_identity(e1):
    rd = rounded(e1, 10)
    nu_in = input_vector(full_subgraph(rd.instance), rd.scheme)
    sub = retrieve(rd, nu_in, 3)
    assert sub.items == frozenset(range(1, 22))


def test_retrieve_stranded_big_items(e1):
    rd = rounded(e1, 10)
    # four squares force s3 and s4, which lie beyond p1's interval
    assert retrieve(rd, vec(rd.scheme, 5, **{"10": 4}), 1) is None


def test_retrieve_zero_agents(e1):
    rd = rounded(e1, 10)
    assert retrieve(rd, vec(rd.scheme, 0), 0).items == frozenset()
    assert retrieve(rd, vec(rd.scheme, 1), 0) is None


def test_retrieve_rejects_oversized_vectors(e1):
    rd = rounded(e1, 10)
    with pytest.raises(ValueError):
        retrieve(rd, vec(rd.scheme, 99), 1)


def test_feasible(e1, e1_assignment_1):
    rd = rounded(e1, 10)
    sub = retrieve(rd, input_vector(full_subgraph(rd.instance), rd.scheme), 3)
    bundle = frozenset(e1.item_index(x) for x in e1_assignment_1.bundle_map()["p1"])
    assert feasible(sub, bundle, e1.agents[0], rd.scheme)
    assert not feasible(sub, frozenset({8}), e1.agents[0], rd.scheme)  # c6 is outside
    assert not feasible(None, bundle, e1.agents[0], rd.scheme)
    assert not feasible(sub, frozenset({3}), e1.agents[0], rd.scheme)  # one circle is short


def test_forward_marks_success(e1, t0):
    rd = rounded(e1, 10)
    table = forward(rd)
    assert table.succeeded
    rd0 = rounded(t0, 4)
    table0 = forward(rd0)
    assert table0.succeeded
    assignment = backward(table0, rd0)
    assert assignment.bundle_map() == {"p1": ("x1",)}


def test_forward_failure_when_infeasible():
    # one item of value 1/10 demanded by two agents: nobody reaches 1 - 3/k
    inst = ConvexInstance(Mode.MAXMIN, (Item("x1", Fraction(1, 10)),),
                          (Agent("p1", 1, 1), Agent("p2", 1, 1)))
    rd = rounded(inst, 4)
    table = forward(rd)
    assert not table.succeeded
    assert not table.row(1)
    out, _ = solve_rounded(rd)
    assert out is None


def test_backward_e1_bundle_values(e1):
    rd = rounded(e1, 10)
    assignment, _ = solve_rounded(rd)
    assert assignment is not None
    for aid, ids in assignment.bundles:
        value = sum((rd.value_at(rd.instance.item_index(x)) for x in ids), Fraction(0))
        assert value >= Fraction(7, 10)
    assert verify(e1, assignment).feasible


def test_backward_t1_scaled(t1):
    rd = rounded(scale(t1, Fraction(11, 10)), 8)
    assignment, _ = solve_rounded(rd)
    assert assignment is not None
    for aid, ids in assignment.bundles:
        value = sum((rd.value_at(rd.instance.item_index(x)) for x in ids), Fraction(0))
        assert value >= 1 - Fraction(3, 8)


def test_backward_minmax_scaled(m1):
    rd = rounded(scale(m1, Fraction(11, 10)), 8)
    assignment, _ = solve_rounded(rd)
    assert assignment is not None
    for aid, ids in assignment.bundles:
        value = sum((rd.value_at(rd.instance.item_index(x)) for x in ids), Fraction(0))
        assert value <= 1 + Fraction(3, 8)


def test_solve_rounded_accepts_weak_single_bundle():
    # value 1/2 rounds up past the 1 - 3/4 bar, so the single bundle passes
    inst = ConvexInstance(Mode.MAXMIN, (Item("x1", Fraction(1, 2)),),
                          (Agent("p1", 1, 1),))
    out, _ = solve_rounded(rounded(inst, 4))
    assert out is not None and out.bundle_map() == {"p1": ("x1",)}


def test_retrieved_graphs_nest(e1):
    rd = rounded(e1, 10)
    nu_in = input_vector(full_subgraph(rd.instance), rd.scheme)
    import itertools
    vectors = [v for v in itertools.product(range(nu_in[0] + 1), range(nu_in[10] + 1))]
    for (a0, a1) in vectors:
        for (b0, b1) in vectors:
            nu_a = vec(rd.scheme, a0, **{"10": a1})
            nu_b = vec(rd.scheme, b0, **{"10": b1})
            if not vector_leq(nu_a, nu_b):
                continue
            for j in (1, 2, 3):
                sub_a = retrieve(rd, nu_a, j)
                sub_b = retrieve(rd, nu_b, j)
                if sub_a is not None and sub_b is not None:
                    assert sub_a.items <= sub_b.items


def test_forward_is_deterministic(e1):
    rd = rounded(e1, 10)
    t1, t2 = forward(rd), forward(rd)
    assert t1.rows == t2.rows
    assert trace_lines(t1) == trace_lines(t2)
    assert trace_lines(t1)[0].startswith("row=3 nu=")


def test_every_emitted_bundle_passes_feasible(e1):
    rd = rounded(e1, 10)
    table = forward(rd)
    assignment = backward(table, rd)
    order = lexicographic_order(rd.instance)
    positions = assignment.positions(rd.instance)
    survivors = set(range(1, rd.instance.m + 1))
    chain = [rd.scheme.zero_vector()]
    for j in range(1, rd.instance.n + 1):
        chain.append(table.row(j)[chain[-1]])
    for j in range(rd.instance.n, 0, -1):
        agent = rd.instance.agents[order[j - 1]]
        before = (retrieve(rd, chain[j], j) if j < rd.instance.n
                  else full_subgraph(rd.instance))
        assert feasible(before, frozenset(positions[order[j - 1]]), agent, rd.scheme)
        survivors -= set(positions[order[j - 1]])
    assert not survivors
