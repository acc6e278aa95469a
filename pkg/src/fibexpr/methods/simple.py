"""Sequential-paths, DFS and DLS generators."""

from __future__ import annotations

from ..expr import ONE, Expr, a, add, b, mul
from ._guard import EXPONENTIAL_CAP, check_size

DIRECT = "direct"
OPPOSITE = "opposite"


def _check_direction(direction):
    if direction not in (DIRECT, OPPOSITE):
        raise ValueError(f"direction must be 'direct' or 'opposite', got {direction!r}")


def gen_sequential(n: int, force: bool = False, cap: int = EXPONENTIAL_CAP) -> Expr:
    """Flat sum of all path products, a-edges explored before b-edges."""
    check_size("seq", n, force, cap)
    products = []
    # (vertex, labels so far); the stack is LIFO, so push b before a.
    stack = [(1, ())]
    while stack:
        i, acc = stack.pop()
        if i == n:
            products.append(mul(*acc))
            continue
        if i < n - 1:
            stack.append((i + 2, acc + (b(i),)))
        stack.append((i + 1, acc + (a(i),)))
    return add(*products)


def dfs_direct(p: int, q: int) -> Expr:
    """E_i = a_i E_{i+1} + b_i E_{i+2} on the subgraph p..q, E_q = 1."""
    acc = {q: ONE}
    if q > p:
        acc[q - 1] = a(q - 1)
    for i in range(q - 2, p - 1, -1):
        acc[i] = add(mul(a(i), acc[i + 1]), mul(b(i), acc[i + 2]))
    return acc[p]


def dfs_opposite(p: int, q: int) -> Expr:
    """Mirror image of :func:`dfs_direct`: F_j = F_{j-1} a_{j-1} + F_{j-2} b_{j-2}."""
    acc = {p: ONE}
    if q > p:
        acc[p + 1] = a(p)
    for j in range(p + 2, q + 1):
        acc[j] = add(mul(acc[j - 1], a(j - 1)), mul(acc[j - 2], b(j - 2)))
    return acc[q]


def gen_dfs(n: int, direction: str = DIRECT, force: bool = False,
            cap: int = EXPONENTIAL_CAP) -> Expr:
    _check_direction(direction)
    check_size("dfs", n, force, cap)
    return dfs_direct(1, n) if direction == DIRECT else dfs_opposite(1, n)


def _closed_segment(i):
    return add(mul(a(i), a(i + 1)), b(i))


def dls_direct(p: int, q: int) -> Expr:
    acc = {q: ONE}
    if q - p >= 1:
        acc[q - 1] = a(q - 1)
    if q - p >= 2:
        acc[q - 2] = _closed_segment(q - 2)
    for i in range(q - 3, p - 1, -1):
        acc[i] = add(
            mul(_closed_segment(i), acc[i + 2]),
            mul(a(i), b(i + 1), acc[i + 3]),
        )
    return acc[p]


def dls_opposite(p: int, q: int) -> Expr:
    acc = {p: ONE}
    if q - p >= 1:
        acc[p + 1] = a(p)
    if q - p >= 2:
        acc[p + 2] = _closed_segment(p)
    for j in range(p + 3, q + 1):
        acc[j] = add(
            mul(acc[j - 2], _closed_segment(j - 2)),
            mul(acc[j - 3], b(j - 3), a(j - 1)),
        )
    return acc[q]


def gen_dls(n: int, direction: str = DIRECT, force: bool = False,
            cap: int = EXPONENTIAL_CAP) -> Expr:
    _check_direction(direction)
    check_size("dls", n, force, cap)
    return dls_direct(1, n) if direction == DIRECT else dls_opposite(1, n)
