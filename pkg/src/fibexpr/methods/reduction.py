"""Series / parallel / node reductions and the reduction method on FGs."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import (
    InvalidScheduleError,
    NoReductionsNeededError,
    ReductionNotApplicableError,
)
from ..expr import Expr, a, add, b, mul
from ..graph import Edge, StDag, fib_graph
from ._guard import EXPONENTIAL_CAP, check_size
from .simple import dfs_direct, dfs_opposite


class Reduction(str, enum.Enum):
    SERIES = "series"
    PARALLEL = "parallel"
    FORK = "fork"
    JOINT = "joint"


class Step(str, enum.Enum):
    FORK = "fork"
    JOINT = "joint"


def apply_reduction(g: StDag, kind, at) -> StDag:
    """Return the graph obtained from ``g`` by one reduction.

    ``at`` is a vertex for series/fork/joint and a ``(tail, head)`` pair for
    parallel.  New edges are appended after the surviving ones, so in a
    later parallel reduction the older (bypass) label comes first.
    """
    kind = Reduction(kind)
    if kind is Reduction.PARALLEL:
        u, w = at
        group = g.edges_between(u, w)
        if len(group) < 2:
            raise ReductionNotApplicableError(
                f"parallel reduction at ({u},{w}) needs >= 2 edges, found {len(group)}"
            )
        merged = Edge(u, w, add(*(e.label for e in group)))
        edges = []
        for e in g.edges:
            if e is group[0]:
                edges.append(merged)
            elif not (e.tail == u and e.head == w):
                edges.append(e)
        return StDag(g.vertices, tuple(edges))

    v = at
    if v not in g.vertices:
        raise ReductionNotApplicableError(f"vertex {v} is not in the graph")
    ins, outs = g.in_edges(v), g.out_edges(v)
    if kind is Reduction.SERIES:
        if len(ins) != 1 or len(outs) != 1:
            raise ReductionNotApplicableError(
                f"series reduction at {v} needs in-degree 1 and out-degree 1, "
                f"has {len(ins)} / {len(outs)}"
            )
        new = [Edge(ins[0].tail, outs[0].head, mul(ins[0].label, outs[0].label))]
    elif kind is Reduction.FORK:
        if len(ins) != 1 or not outs:
            raise ReductionNotApplicableError(
                f"fork reduction at {v} needs in-degree 1 (has {len(ins)}) "
                f"and out-degree >= 1 (has {len(outs)})"
            )
        enter = ins[0]
        new = [Edge(enter.tail, e.head, mul(enter.label, e.label)) for e in outs]
    else:
        if len(outs) != 1 or not ins:
            raise ReductionNotApplicableError(
                f"joint reduction at {v} needs out-degree 1 (has {len(outs)}) "
                f"and in-degree >= 1 (has {len(ins)})"
            )
        leave = outs[0]
        new = [Edge(e.tail, leave.head, mul(e.label, leave.label)) for e in ins]
    kept = tuple(e for e in g.edges if e.tail != v and e.head != v)
    vertices = tuple(x for x in g.vertices if x != v)
    return StDag(vertices, kept + tuple(new))


@dataclass(frozen=True)
class Schedule:
    """Order of node reductions for the reduction method."""

    steps: Tuple[Step, ...]
    seed: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(Step(s) for s in self.steps))

    @property
    def y(self) -> int:
        return len(self.steps)

    @property
    def fork_count(self) -> int:
        return sum(1 for s in self.steps if s is Step.FORK)

    @property
    def joint_count(self) -> int:
        return self.y - self.fork_count

    @property
    def balanced(self) -> bool:
        return abs(self.fork_count - self.joint_count) <= 1

    def __str__(self):
        return "".join("F" if s is Step.FORK else "J" for s in self.steps)


def make_schedule(n: int, seed: int = 0) -> Schedule:
    """Balanced fork/joint schedule with a seeded random interleaving.

    For odd y = n - 3 a coin decides which kind gets the extra reduction;
    each loop iteration then flips a coin between fork and joint until one
    tally runs out.
    """
    if n < 4:
        raise NoReductionsNeededError(
            f"an FG with n={n} vertices is series-parallel; no node reductions"
        )
    rng = np.random.default_rng(seed)

    def rand2():
        return int(rng.integers(1, 3))

    y = n - 3
    if y % 2 == 0:
        forks = joints = y // 2
    elif rand2() == 1:
        forks, joints = (y - 1) // 2, (y + 1) // 2
    else:
        forks, joints = (y + 1) // 2, (y - 1) // 2
    steps = []
    while forks > 0 and joints > 0:
        if rand2() == 1:
            steps.append(Step.FORK)
            forks -= 1
        else:
            steps.append(Step.JOINT)
            joints -= 1
    steps += [Step.FORK] * forks + [Step.JOINT] * joints
    return Schedule(tuple(steps), seed)


def all_schedules(n: int):
    """Every one of the 2^(n-3) fork/joint sequences."""
    for steps in itertools.product((Step.FORK, Step.JOINT), repeat=max(n - 3, 0)):
        yield Schedule(steps)


def gen_reduction(n: int, schedule, force: bool = False,
                  cap: int = EXPONENTIAL_CAP) -> Expr:
    """Reduce fib_graph(n) to a single edge following ``schedule``.

    Each step is a fork at the vertex after the source (or a joint at the
    vertex before the sink) followed by the parallel reduction it enables.
    The remaining three-vertex graph is finished by a series reduction at
    its middle vertex and a parallel reduction at source and sink.
    """
    _, g = reduction_trace(n, schedule, force, cap)[-1]
    return g.edges[0].label


def reduction_trace(n: int, schedule, force: bool = False,
                    cap: int = EXPONENTIAL_CAP) -> list:
    """Every intermediate graph of :func:`gen_reduction` as (step, graph)."""
    check_size("reduction", n, force, cap)
    if not isinstance(schedule, Schedule):
        schedule = Schedule(tuple(schedule))
    if schedule.y != max(n - 3, 0):
        raise InvalidScheduleError(
            f"n={n} needs {max(n - 3, 0)} node reductions, schedule has {schedule.y}"
        )
    g = fib_graph(n)
    trace = [("initial", g)]
    for step in schedule.steps:
        vs = g.vertices
        if step is Step.FORK:
            g = apply_reduction(g, Reduction.FORK, vs[1])
            trace.append((f"fork at {vs[1]}", g))
            pair = (g.vertices[0], g.vertices[1])
        else:
            g = apply_reduction(g, Reduction.JOINT, vs[-2])
            trace.append((f"joint at {vs[-2]}", g))
            pair = (g.vertices[-2], g.vertices[-1])
        g = apply_reduction(g, Reduction.PARALLEL, pair)
        trace.append((f"parallel at {pair[0]},{pair[1]}", g))
    if g.n == 3:
        mid = g.vertices[1]
        g = apply_reduction(g, Reduction.SERIES, mid)
        trace.append((f"series at {mid}", g))
        g = apply_reduction(g, Reduction.PARALLEL, (g.source, g.sink))
        trace.append((f"parallel at {g.source},{g.sink}", g))
    return trace


def split_vertex(n: int, heavier: str = "joint") -> int:
    """Where the optimal reduction method cuts an n-vertex FG.

    Odd n has a unique middle.  For even n the default (one more joint than
    fork reduction) cuts at n/2; ``heavier='fork'`` mirrors it to n/2 + 1.
    """
    if heavier not in ("fork", "joint"):
        raise ValueError(f"heavier must be 'fork' or 'joint', got {heavier!r}")
    c = (n + 1) // 2
    if n % 2 == 0 and heavier == "fork":
        c += 1
    return c


def gen_reduction_optimal(n: int, heavier: str = "joint", force: bool = False,
                          cap: int = EXPONENTIAL_CAP) -> Expr:
    """Four DFS subexpressions glued at the middle vertex c::

        E_opp(1, c) E_dir(c, n) + E_opp(1, c-1) b_{c-1} E_dir(c+1, n)
    """
    check_size("reduction-opt", n, force, cap)
    c = split_vertex(n, heavier)
    if n == 2:
        return a(1)
    return add(
        mul(dfs_opposite(1, c), dfs_direct(c, n)),
        mul(dfs_opposite(1, c - 1), b(c - 1), dfs_direct(c + 1, n)),
    )


def schedule_for_tallies(forks: int, joints: int, rng=None) -> Schedule:
    """A schedule with the given tallies, shuffled by ``rng`` when given."""
    if forks < 0 or joints < 0:
        raise InvalidScheduleError("tallies must be non-negative")
    steps = [Step.FORK] * forks + [Step.JOINT] * joints
    if rng is not None:
        rng.shuffle(steps)
    return Schedule(tuple(steps))
