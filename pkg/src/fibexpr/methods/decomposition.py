"""Decomposition and generalized (multi-vertex) decomposition generators.

Both build E(p, q) bottom-up with an explicit work stack and memoize every
interval, so the result is a shared DAG whose node count stays polynomial
even when the textual expression is large.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from ..errors import InvalidChoiceError, InvalidPartCountError
from ..expr import ONE, Expr, a, add, b, gc_paused, mul
from ._guard import POLYNOMIAL_CAP, check_size

Strategy = Callable[[int, int], int]


def middle_floor(p: int, q: int) -> int:
    return (p + q) // 2


def middle_ceil(p: int, q: int) -> int:
    return (p + q + 1) // 2


def fixed(k: int) -> Strategy:
    """Split ``k`` vertices after the interval source (``k < 0``: ``-k``
    before the sink), clamped into the open interval.

    ``fixed(1)`` reproduces DFS, ``fixed(2)`` DLS; negative offsets give
    the opposite-direction variants.
    """
    if k == 0:
        raise ValueError("fixed offset must be non-zero")

    def choose(p, q):
        i = p + k if k > 0 else q + k
        return min(max(i, p + 1), q - 1)

    choose.__name__ = f"fixed_{k}"
    return choose


STRATEGIES = {"middle-floor": middle_floor, "middle-ceil": middle_ceil}


def resolve_strategy(spec: Union[str, Strategy]) -> Strategy:
    """Accept a callable or one of ``middle-floor``, ``middle-ceil``,
    ``fixed:K``."""
    if callable(spec):
        return spec
    if spec in STRATEGIES:
        return STRATEGIES[spec]
    if isinstance(spec, str) and spec.startswith("fixed:"):
        try:
            k = int(spec[len("fixed:"):])
        except ValueError:
            raise ValueError(f"bad fixed strategy {spec!r}") from None
        return fixed(k)
    raise ValueError(
        f"unknown strategy {spec!r}; expected middle-floor, middle-ceil or fixed:K"
    )


def _build(p0: int, q0: int, children, combine) -> Expr:
    """Memoized post-order over intervals.

    ``children(p, q)`` lists the sub-intervals E(p, q) needs (only called for
    q - p >= 2); ``combine(p, q, memo)`` builds E(p, q) from them.
    """
    memo = {}

    def base(p, q):
        if q == p:
            return ONE
        if q == p + 1:
            return a(p)
        return None

    stack = [(p0, q0, False)]
    with gc_paused():
        _drain(stack, memo, base, children, combine)
    return memo[p0, q0]


def _drain(stack, memo, base, children, combine):
    while stack:
        p, q, ready = stack.pop()
        if (p, q) in memo:
            continue
        e = base(p, q)
        if e is not None:
            memo[p, q] = e
            continue
        if ready:
            memo[p, q] = combine(p, q, memo)
            continue
        stack.append((p, q, True))
        for sub in children(p, q):
            if sub not in memo:
                stack.append((sub[0], sub[1], False))


def decomposition_expr(p: int, q: int, strategy: Strategy) -> Expr:
    """E(p,q) = E(p,i) E(i,q) + E(p,i-1) b_{i-1} E(i+1,q) with i = strategy(p,q)."""
    choices = {}

    def split(p, q):
        if (p, q) not in choices:
            i = strategy(p, q)
            if not (isinstance(i, int) and p < i < q):
                raise InvalidChoiceError(p, q, i)
            choices[p, q] = i
        return choices[p, q]

    def children(p, q):
        i = split(p, q)
        return [(p, i), (i, q), (p, i - 1), (i + 1, q)]

    def combine(p, q, memo):
        i = split(p, q)
        return add(
            mul(memo[p, i], memo[i, q]),
            mul(memo[p, i - 1], b(i - 1), memo[i + 1, q]),
        )

    return _build(p, q, children, combine)


def gen_decomposition(n: int, strategy: Union[str, Strategy] = "middle-floor",
                      force: bool = False, cap: int = POLYNOMIAL_CAP) -> Expr:
    check_size("decomposition", n, force, cap)
    return decomposition_expr(1, n, resolve_strategy(strategy))


@dataclass(frozen=True)
class GdConfig:
    m: int
    split: str = "uniform"

    def __post_init__(self):
        if self.split != "uniform":
            raise ValueError("only uniform vertex placement is supported")


def uniform_vertices(p: int, q: int, m: int) -> list:
    """Decomposition vertices p + round(k(q-p)/m), k = 1..m-1.

    Rounding is half-up.  Values are clamped into (p, q) and duplicates are
    dropped, so short intervals get fewer parts.
    """
    span = q - p
    out = []
    for k in range(1, m):
        i = p + (2 * k * span + m) // (2 * m)
        i = min(max(i, p + 1), q - 1)
        if not out or out[-1] != i:
            out.append(i)
    return out


def _gd_patterns(p: int, q: int, m: int):
    """Yield (factor plan) for each bypass pattern of E(p, q).

    A plan is a list of items: ``(x, y)`` for a segment subexpression or a
    Term for a bypass edge.  Patterns with an inverted segment are skipped.
    """
    verts = uniform_vertices(p, q, m)
    k = len(verts)
    for mask in range(1 << k):
        bypassed = [(mask >> j) & 1 for j in range(k)]
        plan = []
        ok = True
        for j in range(k + 1):
            left = p if j == 0 else verts[j - 1] + bypassed[j - 1]
            right = q if j == k else verts[j] - bypassed[j]
            if right < left:
                ok = False
                break
            plan.append((left, right))
            if j < k and bypassed[j]:
                plan.append(b(verts[j] - 1))
        if ok:
            yield plan


def gd_expr(p: int, q: int, m: int) -> Expr:
    def children(p, q):
        subs = []
        for plan in _gd_patterns(p, q, m):
            subs.extend(x for x in plan if isinstance(x, tuple))
        return subs

    def combine(p, q, memo):
        terms = []
        for plan in _gd_patterns(p, q, m):
            terms.append(mul(*(memo[x] if isinstance(x, tuple) else x for x in plan)))
        return add(*terms)

    return _build(p, q, children, combine)


def gen_gd(n: int, config: Union[GdConfig, int], force: bool = False,
           cap: int = POLYNOMIAL_CAP) -> Expr:
    """Generalized decomposition: each interval is split at m-1 uniformly
    placed vertices and expanded over all 2^(m-1) pass/bypass patterns."""
    check_size("gd", n, force, cap)
    if isinstance(config, int):
        config = GdConfig(config)
    if not 2 <= config.m <= n - 1:
        raise InvalidPartCountError(f"m must lie in [2, {n - 1}] for n={n}, got {config.m}")
    return gd_expr(1, n, config.m)
