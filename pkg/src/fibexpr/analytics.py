"""Count predictions: recurrences, closed forms and the decomposition DP."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import CountOverflowError, InvalidSizeError

COUNT_LIMIT = 1 << 128


class MethodId(str, enum.Enum):
    SEQUENTIAL = "seq"
    DFS = "dfs"
    DLS = "dls"
    REDUCTION_OPTIMAL = "reduction-opt"
    DECOMPOSITION_OPTIMAL = "decomposition-opt"


def _checked(value, what, n):
    if value >= COUNT_LIMIT:
        raise CountOverflowError(what, n)
    return value


def _require_n(n):
    if not isinstance(n, int) or n < 1:
        raise InvalidSizeError(f"n must be an integer >= 1, got {n!r}")


def fib_count(n: int) -> int:
    """Number of source-sink paths of the n-vertex FG (F_1 = F_2 = 1)."""
    _require_n(n)
    prev, cur = 0, 1
    for k in range(2, n + 1):
        prev, cur = cur, _checked(prev + cur, "path count", k)
    return cur


def _linear(n, initial, step, what):
    """Sequence with explicit initial values (index 1..len) extended by
    ``step(seq, k)``; every term is range-checked."""
    seq = [None] + list(initial)
    for k in range(len(initial) + 1, n + 1):
        seq.append(_checked(step(seq, k), what, k))
    return seq[n]


def _sequential(n):
    p = [None, 1, 1]
    for k in range(3, n + 1):
        p.append(_checked(p[-1] + p[-2], "sequential paths", k))
    t = _linear(n, [0, 1], lambda s, k: s[k - 1] + s[k - 2] + p[k], "sequential T")
    pl = _linear(n, [0, 0], lambda s, k: s[k - 1] + s[k - 2] + 1, "sequential P")
    return t, pl


def _dfs(n):
    t = _linear(n, [0, 1], lambda s, k: s[k - 1] + s[k - 2] + 2, "dfs T")
    pl = _linear(n, [0, 0], lambda s, k: s[k - 1] + s[k - 2] + 1, "dfs P")
    return t, pl


def _dls(n):
    t = _linear(n, [0, 1, 3], lambda s, k: s[k - 2] + s[k - 3] + 5, "dls T")
    pl = _linear(n, [0, 0, 1], lambda s, k: s[k - 2] + s[k - 3] + 2, "dls P")
    return t, pl


def _reduction(n):
    t = _linear(n, [0, 1, 3, 6, 9], lambda s, k: s[k - 2] + s[k - 4] + 7, "reduction T")
    pl = _linear(n, [0, 0, 1, 2, 3], lambda s, k: s[k - 2] + s[k - 4] + 3,
                 "reduction P")
    return t, pl


@lru_cache(maxsize=None)
def _decomposition(n):
    if n == 1:
        return 0, 0
    if n == 2:
        return 1, 0
    hi, lo = (n + 1) // 2, n // 2
    parts = [_decomposition(k) for k in (hi, lo + 1, hi - 1, lo)]
    t = _checked(sum(x[0] for x in parts) + 1, "decomposition T", n)
    pl = _checked(sum(x[1] for x in parts) + 1, "decomposition P", n)
    return t, pl


_PREDICTORS = {
    MethodId.SEQUENTIAL: _sequential,
    MethodId.DFS: _dfs,
    MethodId.DLS: _dls,
    MethodId.REDUCTION_OPTIMAL: _reduction,
    MethodId.DECOMPOSITION_OPTIMAL: _decomposition,
}


def predicted_counts(method, n: int) -> tuple[int, int]:
    """Exact (T, P) for ``method`` on an n-vertex FG, from its recurrence."""
    _require_n(n)
    return _PREDICTORS[MethodId(method)](n)


SQRT5 = math.sqrt(5.0)
PHI = (1 + SQRT5) / 2
PSI = (1 - SQRT5) / 2


def _binet(n):
    return (PHI ** n - PSI ** n) / SQRT5


def closed_form_counts(method, n: int) -> tuple[float, float]:
    """Explicit (T, P) formulas evaluated in floating point.

    Sequential and DFS use exact-coefficient Binet-type forms.  DLS and the
    optimal reduction method use five-digit truncated coefficients in their
    real (trigonometric) form, so expect ~1e-3 relative error.  The optimal
    decomposition method has no closed form (only a Theta(n^2) bound).
    """
    _require_n(n)
    method = MethodId(method)
    if method is MethodId.SEQUENTIAL:
        t = ((PHI * n - 3 / SQRT5) * PHI ** n + (PSI * n + 3 / SQRT5) * PSI ** n) / 5
        return t, _binet(n) - 1
    if method is MethodId.DFS:
        t = ((5 + 3 * SQRT5) * PHI ** n + (5 - 3 * SQRT5) * PSI ** n) / 10 - 2
        return t, _binet(n) - 1
    if method is MethodId.DLS:
        rho, r, theta = 1.3247, 0.86884, 0.70386
        sign = (-1) ** (n + 1)
        c, s = math.cos(theta * n), math.sin(theta * n)
        t = 3.4912 * rho ** n + sign * r ** n * (0.49109 * c + 0.088942 * s) - 5
        p = 1.2672 * rho ** n + sign * r ** n * (0.26724 * c + 0.25655 * s) - 2
        return t, p
    if method is MethodId.REDUCTION_OPTIMAL:
        if n == 1:
            return 0.0, 0.0
        big = math.sqrt(PHI) ** n
        small = math.sqrt((SQRT5 - 1) / 2) ** n
        alt = (-1) ** n
        c, s = math.cos(n * math.pi / 2), math.sin(n * math.pi / 2)
        t = (4.8896 + alt * 0.070089) * big + (0.040325 * c - 0.16599 * s) * small - 7
        p = (1.8677 + alt * 0.026772) * big + (0.10557 * c - 0.43457 * s) * small - 3
        return t, p
    raise ValueError(f"no closed form is known for {method.value}")


@dataclass(frozen=True)
class DpTable:
    """Minimum T and P over all decomposition strategies.

    Any sub-interval of an FG is itself an FG, so minima depend only on the
    interval length; tables are indexed by length and the ``(p, q)``
    accessors translate.  Argmin sets hold offsets ``i - p``.
    """

    n: int
    objective: str
    tmin_by_len: tuple
    pmin_by_len: tuple
    t_argmin_by_len: tuple
    p_argmin_by_len: tuple

    def _len(self, p, q):
        if not 1 <= p <= q <= self.n:
            raise ValueError(f"interval ({p}, {q}) outside 1..{self.n}")
        return q - p + 1

    def tmin(self, p: int, q: int) -> int:
        return self.tmin_by_len[self._len(p, q)]

    def pmin(self, p: int, q: int) -> int:
        return self.pmin_by_len[self._len(p, q)]

    def minimum(self, p: int, q: int, objective: str | None = None) -> int:
        obj = objective or self.objective
        return self.tmin(p, q) if obj == "T" else self.pmin(p, q)

    def argmin(self, p: int, q: int, objective: str | None = None) -> frozenset:
        """Decomposition vertices attaining the minimum on (p, q); empty for
        intervals too short to split."""
        obj = objective or self.objective
        table = self.t_argmin_by_len if obj == "T" else self.p_argmin_by_len
        return frozenset(p + k for k in table[self._len(p, q)])


def min_counts_dp(n: int, objective: str = "T") -> DpTable:
    """Interval DP over every choice of decomposition vertex."""
    if objective not in ("T", "P"):
        raise ValueError("objective must be 'T' or 'P'")
    if not isinstance(n, int) or not 2 <= n <= 1000:
        raise InvalidSizeError(f"min_counts_dp needs 2 <= n <= 1000, got {n!r}")
    # index = interval length (vertex count); length 1 is a single vertex
    tmin = [0, 0, 1]
    pmin = [0, 0, 0]
    t_arg = [frozenset(), frozenset(), frozenset()]
    p_arg = [frozenset(), frozenset(), frozenset()]
    for length in range(3, n + 1):
        for mins, args in ((tmin, t_arg), (pmin, p_arg)):
            best, where = None, []
            # offset k = i - p; E(p,i), E(i,q), E(p,i-1), E(i+1,q)
            for k in range(1, length - 1):
                v = mins[k + 1] + mins[length - k] + mins[k] + mins[length - k - 1] + 1
                if best is None or v < best:
                    best, where = v, [k]
                elif v == best:
                    where.append(k)
            mins.append(best)
            args.append(frozenset(where))
    return DpTable(n, objective, tuple(tmin), tuple(pmin), tuple(t_arg), tuple(p_arg))


def middle_vertices(p: int, q: int) -> frozenset:
    """Middle vertex of (p, q), or both middles when q - p + 1 is even."""
    return frozenset({(p + q) // 2, (p + q + 1) // 2})


def special_groups(max_group: int) -> list:
    """Groups of n with extra P-optimal decomposition vertices:
    [7], [13..15], [25..31], ... as inclusive ``range`` objects."""
    if max_group < 1:
        raise ValueError("max_group must be >= 1")
    first = last = 7
    groups = [range(first, last + 1)]
    for _ in range(max_group - 1):
        first, last = 2 * first - 1, 2 * last + 1
        groups.append(range(first, last + 1))
    return groups


def gd_growth_exponent(m: int) -> float:
    """Exponent e in the O(n^e) bound for the uniform GD method, m parts."""
    if m < 2:
        raise ValueError("m must be >= 2")
    return 1 + (m - 1) * math.log(2) / math.log(m)


def optimal_process_count(n: int) -> int:
    """Distinct orderings of one balanced tally choice of node reductions."""
    if n < 4:
        raise InvalidSizeError("node reductions start at n = 4")
    y = n - 3
    return math.comb(y, y // 2) if y % 2 == 0 else math.comb(y, (y - 1) // 2)
