import itertools

import numpy as np
import pytest

from conftest import text_counts
from fibexpr.errors import (
    InvalidScheduleError,
    NoReductionsNeededError,
    ReductionNotApplicableError,
)
from fibexpr.expr import a, complexity, expand, render
from fibexpr.graph import Edge, StDag, enumerate_paths, fib_graph
from fibexpr.methods import (
    Schedule,
    Step,
    all_schedules,
    apply_reduction,
    gen_reduction,
    gen_reduction_optimal,
    make_schedule,
    reduction_trace,
)


def labels(g):
    return {(e.tail, e.head, render(e.label)) for e in g.edges}


def test_joint_then_parallel():
    g = apply_reduction(fib_graph(6), "joint", 5)
    assert 5 not in g.vertices
    assert {(4, 6, "a4a5"), (3, 6, "b3a5")} <= labels(g)
    g = apply_reduction(g, "parallel", (4, 6))
    assert (4, 6, "b4+a4a5") in labels(g)


def test_fork():
    g = apply_reduction(fib_graph(6), "fork", 2)
    assert {(1, 3, "a1a2"), (1, 4, "a1b2")} <= labels(g)
    g = apply_reduction(g, "parallel", (1, 3))
    assert (1, 3, "b1+a1a2") in labels(g)


def test_series():
    g = StDag((1, 2, 3), (Edge(1, 2, a(1)), Edge(2, 3, a(2))))
    assert labels(apply_reduction(g, "series", 2)) == {(1, 3, "a1a2")}


@pytest.mark.parametrize("kind, at, needle", [
    ("series", 3, "in-degree 1"),
    ("fork", 3, "in-degree 1"),
    ("joint", 3, "out-degree 1"),
    ("parallel", (1, 2), ">= 2 edges"),
    ("fork", 42, "not in the graph"),
])
def test_not_applicable(kind, at, needle):
    with pytest.raises(ReductionNotApplicableError, match=needle):
        apply_reduction(fib_graph(6), kind, at)


def test_reduction_n5_either_order():
    fj = gen_reduction(5, ["fork", "joint"])
    jf = gen_reduction(5, ["joint", "fork"])
    assert fj == jf
    assert render(fj) == "a1b2a4+(b1+a1a2)(b3+a3a4)"
    assert expand(fj) == enumerate_paths(fib_graph(5))


def test_reduction_n6_final_label():
    e = gen_reduction(6, ["joint", "fork", "fork"])
    assert render(e) == "(b1+a1a2)b3a5+(a1b2+(b1+a1a2)a3)(b4+a4a5)"


def test_reduction_n6_balanced_counts():
    for steps in itertools.permutations(["joint", "fork", "joint"]):
        assert text_counts(gen_reduction(6, list(steps))) == (14, 5)


def test_small_graphs_need_no_node_reductions():
    assert render(gen_reduction(3, [])) == "b1+a1a2"
    assert render(gen_reduction(2, [])) == "a1"


def test_schedule_length_checked():
    with pytest.raises(InvalidScheduleError):
        gen_reduction(6, ["fork"])


def test_trace_shrinks_to_one_edge():
    trace = reduction_trace(7, make_schedule(7))
    assert trace[0][1] == fib_graph(7)
    last = trace[-1][1]
    assert last.vertices == (1, 7) and len(last.edges) == 1
    sizes = [g.n for _, g in trace]
    assert sizes == sorted(sizes, reverse=True)


def test_make_schedule():
    s = make_schedule(9)
    assert (s.y, s.fork_count, s.joint_count) == (6, 3, 3)
    assert make_schedule(4).y == 1
    tallies = {(make_schedule(10, seed).fork_count, make_schedule(10, seed).joint_count)
               for seed in range(40)}
    assert tallies == {(3, 4), (4, 3)}
    with pytest.raises(NoReductionsNeededError):
        make_schedule(3)


def test_make_schedule_reproducible():
    assert make_schedule(20, 5) == make_schedule(20, 5)
    assert len({str(make_schedule(20, s)) for s in range(20)}) > 1


def test_schedule_str_and_steps():
    s = Schedule(("fork", Step.JOINT))
    assert str(s) == "FJ" and s.balanced
    assert not Schedule(("fork", "fork", "fork")).balanced


def test_balanced_matches_optimal_counts():
    for n in range(4, 21):
        for seed in (0, 1):
            got = complexity(gen_reduction(n, make_schedule(n, seed))).counts()
            assert got == complexity(gen_reduction_optimal(n)).counts(), n


def test_all_schedules_count():
    assert len(list(all_schedules(8))) == 32
    assert list(all_schedules(3)) == [Schedule(())]


def test_shuffled_equals_sorted(fresh_rng):
    s = make_schedule(11, 3)
    steps = list(s.steps)
    fresh_rng.shuffle(steps)
    assert gen_reduction(11, steps) == gen_reduction(11, s)
