import pytest

from fibexpr.errors import InvalidSizeError, UnsupportedInputError
from fibexpr.expr import INTEGERS, PrimeField, a, add, b, mul, parse
from fibexpr.graph import Edge, StDag, enumerate_paths, fib_graph, is_walk, path_sum


def labels(g):
    return {(e.tail, e.head, str(e.label)) for e in g.edges}


def test_fib_graph_small():
    assert labels(fib_graph(2)) == {(1, 2, "a1")}
    assert labels(fib_graph(4)) == {
        (1, 2, "a1"), (2, 3, "a2"), (3, 4, "a3"), (1, 3, "b1"), (2, 4, "b2")}
    assert fib_graph(1).edges == ()


def test_fib_graph_edge_tallies():
    g = fib_graph(9)
    assert len(g.edges) == 15
    assert sum(1 for e in g.edges if e.label.kind == "a") == 8
    assert (g.source, g.sink, g.n) == (1, 9, 9)


def test_fib_graph_rejects_zero():
    with pytest.raises(InvalidSizeError):
        fib_graph(0)


@pytest.mark.parametrize("verts, edges", [
    ((1, 2, 3), [(1, 2), (1, 3)]),  # 2 is a second sink
    ((1, 2, 3), [(1, 3), (2, 3)]),  # 2 is a second source
    ((1, 2), [(2, 1)]),
    ((1, 2), [(1, 5)]),
])
def test_stdag_validation(verts, edges):
    with pytest.raises(ValueError):
        StDag(verts, tuple(Edge(t, h, a(1)) for t, h in edges))


def test_enumerate_paths_examples():
    assert enumerate_paths(fib_graph(2)) == {(a(1),)}
    assert enumerate_paths(fib_graph(4)) == {
        (a(1), a(2), a(3)), (a(1), b(2)), (b(1), a(3))}
    assert len(enumerate_paths(fib_graph(9))) == 34


def test_enumerate_paths_counts_are_fibonacci():
    fib = [0, 1]
    while len(fib) < 22:
        fib.append(fib[-1] + fib[-2])
    for n in range(1, 21):
        paths = enumerate_paths(fib_graph(n))
        assert len(paths) == fib[n]
        assert all(is_walk(p, 1, n) for p in paths)


def test_enumerate_paths_rejects_compound_labels():
    g = StDag((1, 2), (Edge(1, 2, mul(a(1), b(1))),))
    with pytest.raises(UnsupportedInputError):
        enumerate_paths(g)


def test_is_walk():
    assert is_walk((a(1), b(2)), 1, 4)
    assert not is_walk((a(1), a(3)), 1, 4)
    assert not is_walk((a(1),), 1, 3)


def test_path_sum_matches_path_count():
    for n in range(1, 15):
        g = fib_graph(n)
        ones = {e.label: 1 for e in g.edges}
        assert path_sum(g, ones, INTEGERS) == len(enumerate_paths(g))


def test_path_sum_compound_labels():
    # (a1a2 + b1) on one edge behaves like the two paths it replaced
    g = StDag((1, 3, 4), (Edge(1, 3, parse("a1a2+b1")), Edge(3, 4, a(3)),
                           Edge(1, 4, mul(a(1), b(2)))))
    vals = {a(1): 2, a(2): 3, b(1): 5, a(3): 7, b(2): 11}
    assert path_sum(g, vals, INTEGERS) == (2 * 3 + 5) * 7 + 2 * 11
    f = PrimeField(13)
    assert path_sum(g, vals, f) == ((2 * 3 + 5) * 7 + 2 * 11) % 13
