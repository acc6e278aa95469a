"""Labeled two-terminal DAGs and the Fibonacci graph family."""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Tuple

from .errors import InvalidSizeError, UnsupportedInputError
from .expr import Expr, Term, a, b, evaluate

# A path is the ordered tuple of its edge labels; a PathSet is the set of
# such monomials, i.e. the canonical expression of the graph.
Monomial = Tuple[Term, ...]
PathSet = FrozenSet[Monomial]


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    label: Expr


@dataclass(frozen=True)
class StDag:
    """Immutable st-dag.

    Vertices are positive integers kept in increasing order; reductions remove
    vertices without renaming the rest.  Parallel edges are separate records
    and edge order is meaningful (creation order).
    """

    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(self.edges))
        self._check()

    def _check(self):
        vs = set(self.vertices)
        if not vs:
            raise ValueError("an st-dag needs at least one vertex")
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex")
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise ValueError(f"edge ({e.tail},{e.head}) has an unknown endpoint")
            if not e.tail < e.head:
                raise ValueError(f"edge ({e.tail},{e.head}) must satisfy tail < head")
        heads = {e.head for e in self.edges}
        tails = {e.tail for e in self.edges}
        sources = [v for v in self.vertices if v not in heads]
        sinks = [v for v in self.vertices if v not in tails]
        if len(sources) != 1 or len(sinks) != 1:
            raise ValueError(
                f"expected exactly one source and one sink, got {sources} / {sinks}"
            )
        # tail < head gives a topological order for free.
        forward = {sources[0]}
        for e in sorted(self.edges, key=lambda e: e.tail):
            if e.tail in forward:
                forward.add(e.head)
        backward = {sinks[0]}
        for e in sorted(self.edges, key=lambda e: -e.head):
            if e.head in backward:
                backward.add(e.tail)
        stranded = vs - (forward & backward)
        if stranded:
            raise ValueError(f"vertices {sorted(stranded)} are not on a source-sink path")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def sink(self) -> int:
        return self.vertices[-1]

    def in_edges(self, v: int) -> list:
        return [e for e in self.edges if e.head == v]

    def out_edges(self, v: int) -> list:
        return [e for e in self.edges if e.tail == v]

    def edges_between(self, u: int, w: int) -> list:
        return [e for e in self.edges if e.tail == u and e.head == w]


def fib_graph(n: int) -> StDag:
    """Fibonacci graph on vertices 1..n: edges (v, v+1) labeled a_v and
    (v, v+2) labeled b_v."""
    if n < 1:
        raise InvalidSizeError(f"a Fibonacci graph needs n >= 1, got {n}")
    edges = [Edge(v, v + 1, a(v)) for v in range(1, n)]
    edges += [Edge(v, v + 2, b(v)) for v in range(1, n - 1)]
    return StDag(tuple(range(1, n + 1)), tuple(edges))


def enumerate_paths(g: StDag) -> PathSet:
    """All source-to-sink paths of ``g`` as label sequences.

    Only graphs whose labels are single terms are accepted; this is the
    ground-truth oracle and must not depend on expression machinery.
    """
    for e in g.edges:
        if not isinstance(e.label, Term):
            raise UnsupportedInputError(
                f"edge ({e.tail},{e.head}) has a compound label; "
                "path enumeration needs atomic labels"
            )
    succ = {v: [] for v in g.vertices}
    for e in g.edges:
        succ[e.tail].append(e)
    paths = set()
    stack = [(g.source, ())]
    while stack:
        v, labels = stack.pop()
        if v == g.sink:
            paths.add(labels)
            continue
        for e in succ[v]:
            stack.append((e.head, labels + (e.label,)))
    return frozenset(paths)


def is_walk(monomial: Monomial, source: int, sink: int) -> bool:
    """True when consecutive Fibonacci labels chain head-to-tail from
    ``source`` to ``sink``."""
    v = source
    for t in monomial:
        if t.tail != v:
            return False
        v = t.head
    return v == sink


def path_sum(g: StDag, assignment, semiring) -> object:
    """Semiring sum over all source-sink paths of the product of their edge
    values, by dynamic programming from the sink (no expansion)."""
    value = {g.sink: semiring.one}
    for v in reversed(g.vertices[:-1]):
        acc = semiring.zero
        for e in g.out_edges(v):
            label = evaluate(e.label, assignment, semiring)
            acc = semiring.add(acc, semiring.mul(label, value[e.head]))
        value[v] = acc
    return value[g.source]
