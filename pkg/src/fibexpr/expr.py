"""Expression trees over Fibonacci-graph edge labels.

An expression is built from terms ``a_i`` / ``b_i``, n-ary sums and n-ary
products.  Operand order is kept exactly as the generating algorithm emits
it; the only normalization is flattening of directly nested nodes of the
same kind and absorption of the unit ``ONE`` by products.  Neither changes
the term count or the plus-operator count.

Generators share subtrees freely (expressions are immutable), so every
traversal here is iterative and memoized on node identity.  That keeps
an expression of exponential textual size cheap to measure.
"""

from __future__ import annotations

import contextlib
import functools
import gc
import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .errors import ExprSyntaxError, InvalidExpressionError, UnboundTermError


@dataclass(frozen=True)
class Term:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ("a", "b"):
            raise ValueError(f"term kind must be 'a' or 'b', got {self.kind!r}")
        if self.index < 1:
            raise ValueError(f"term index must be >= 1, got {self.index}")

    @property
    def tail(self) -> int:
        return self.index

    @property
    def head(self) -> int:
        return self.index + (1 if self.kind == "a" else 2)

    def __str__(self):
        return f"{self.kind}{self.index}"


class _One:
    """Multiplicative unit: the expression of a single-vertex subgraph."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ONE"

    def __reduce__(self):
        return (_One, ())


ONE = _One()


@dataclass(frozen=True)
class Sum:
    operands: tuple

    def __post_init__(self):
        if len(self.operands) < 2:
            raise InvalidExpressionError("a Sum needs at least two operands")


@dataclass(frozen=True)
class Product:
    operands: tuple

    def __post_init__(self):
        if len(self.operands) < 2:
            raise InvalidExpressionError("a Product needs at least two operands")


Expr = Union[Term, Sum, Product, _One]


@contextlib.contextmanager
def gc_paused():
    """Suspend the cyclic collector while building or walking big DAGs.

    Expression nodes never form cycles, and the collector's repeated scans
    of millions of live nodes dominate the run time otherwise.
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


@functools.lru_cache(maxsize=None)
def term(kind: str, index: int) -> Term:
    """Interned term constructor; equal terms share one object."""
    return Term(kind, index)


def a(i: int) -> Term:
    return term("a", i)


def b(i: int) -> Term:
    return term("b", i)


def add(*operands: Expr) -> Expr:
    flat = []
    for op in operands:
        if isinstance(op, Sum):
            flat.extend(op.operands)
        else:
            flat.append(op)
    if not flat:
        raise InvalidExpressionError("empty sum")
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def mul(*operands: Expr) -> Expr:
    flat = []
    for op in operands:
        if op is ONE:
            continue
        if isinstance(op, Product):
            flat.extend(op.operands)
        else:
            flat.append(op)
    if not flat:
        return ONE
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def fold(e: Expr, on_term: Callable, on_one, on_sum: Callable, on_product: Callable):
    """Bottom-up evaluation of ``e`` with an explicit stack.

    Shared subtrees are computed once.  ``on_sum`` / ``on_product`` receive
    the list of already-folded operand values.
    """
    with gc_paused():
        return _fold(e, on_term, on_one, on_sum, on_product)


def _fold(e, on_term, on_one, on_sum, on_product):
    memo = {}
    stack = [(e, False)]
    while stack:
        node, ready = stack.pop()
        key = id(node)
        if key in memo:
            continue
        if isinstance(node, Term):
            memo[key] = on_term(node)
        elif node is ONE:
            memo[key] = on_one
        elif ready:
            vals = [memo[id(op)] for op in node.operands]
            memo[key] = on_sum(vals) if isinstance(node, Sum) else on_product(vals)
        elif isinstance(node, (Sum, Product)):
            stack.append((node, True))
            for op in reversed(node.operands):
                if id(op) not in memo:
                    stack.append((op, False))
        else:
            raise InvalidExpressionError(f"not an expression node: {node!r}")
    return memo[id(e)]


@dataclass(frozen=True)
class ComplexityReport:
    terms: int
    plus_ops: int
    products: int | None = None

    def counts(self) -> tuple[int, int]:
        return (self.terms, self.plus_ops)


def complexity(e: Expr, products: bool = False) -> ComplexityReport:
    """Term occurrences (T) and plus operators (P) of ``e``.

    With ``products=True`` the number of monomials in the full expansion is
    also reported; it is computed by counting, not by expanding.
    """
    terms, plus = fold(
        e,
        lambda t: (1, 0),
        (0, 0),
        lambda vs: (sum(v[0] for v in vs), sum(v[1] for v in vs) + len(vs) - 1),
        lambda vs: (sum(v[0] for v in vs), sum(v[1] for v in vs)),
    )
    count = None
    if products:
        count = fold(e, lambda t: 1, 1, sum, _prod)
    return ComplexityReport(terms, plus, count)


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


def terms_of(e: Expr) -> frozenset:
    """Distinct terms occurring in ``e``."""
    return fold(
        e,
        lambda t: frozenset((t,)),
        frozenset(),
        lambda vs: frozenset().union(*vs),
        lambda vs: frozenset().union(*vs),
    )


def expand(e: Expr) -> frozenset:
    """Distribute every product over its sums.

    Returns the set of monomials, each a tuple of terms in left-to-right
    factor order.  Raises InvalidExpressionError when two distinct branches
    produce the same monomial: a correct Fibonacci-graph expression never
    does.
    """
    monomials = fold(
        e,
        lambda t: ((t,),),
        ((),),
        lambda vs: tuple(itertools.chain.from_iterable(vs)),
        _expand_product,
    )
    result = frozenset(monomials)
    if len(result) != len(monomials):
        seen = set()
        for mono in monomials:
            if mono in seen:
                raise InvalidExpressionError(
                    "duplicate monomial " + "".join(map(str, mono))
                )
            seen.add(mono)
    return result


def _expand_product(parts):
    acc = ((),)
    for part in parts:
        acc = tuple(x + y for x in acc for y in part)
    return acc


def render(e: Expr) -> str:
    """Text form: juxtaposition for products, parentheses only around sums
    that are product operands, no whitespace."""
    # Folded value is (text, is_sum); the unit folds to None and has no text.
    text, _ = fold(
        e,
        lambda t: (f"{t.kind}{t.index}", False),
        None,
        lambda vs: ("+".join(_rendered(v)[0] for v in vs), True),
        lambda vs: (
            "".join(f"({t})" if is_sum else t for t, is_sum in map(_rendered, vs)),
            False,
        ),
    ) or _rendered(None)
    return text


def _rendered(v):
    if v is None:
        raise InvalidExpressionError("the unit has no textual form")
    return v


def parse(text: str) -> Expr:
    """Inverse of :func:`render`.

    Grammar::

        sum     := product ('+' product)*
        product := atom atom*
        atom    := term | '(' sum ')'
        term    := ('a' | 'b') index      index: decimal >= 1, no leading zero

    Whitespace is allowed between tokens but not inside a term.
    """
    return _Parser(text).parse()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise ExprSyntaxError(message, self.pos)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def raw(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Expr:
        e = self.sum()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.peek()!r}")
        return e

    def sum(self) -> Expr:
        ops = [self.product()]
        while self.peek() == "+":
            self.pos += 1
            ops.append(self.product())
        return add(*ops)

    def product(self) -> Expr:
        ops = [self.atom()]
        while self.peek() in ("a", "b", "("):
            ops.append(self.atom())
        return mul(*ops)

    def atom(self) -> Expr:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.sum()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if c in ("a", "b"):
            self.pos += 1
            start = self.pos
            while self.raw().isdigit() and self.raw().isascii():
                self.pos += 1
            digits = self.text[start:self.pos]
            if not digits:
                self.error("expected term index")
            if digits[0] == "0":
                self.pos = start
                self.error("term index must be a decimal >= 1 without leading zeros")
            return term(c, int(digits))
        if c == "":
            self.error("unexpected end of input")
        self.error(f"unexpected {c!r}")


class Semiring:
    """Commutative semiring used for equivalence checks."""

    name = "semiring"
    zero = 0
    one = 1

    def add(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def lift(self, value):
        return value


class Integers(Semiring):
    name = "integers"

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y


class PrimeField(Semiring):
    def __init__(self, modulus: int = (1 << 61) - 1):
        self.modulus = modulus
        self.name = f"GF({modulus})"

    def add(self, x, y):
        return (x + y) % self.modulus

    def mul(self, x, y):
        return (x * y) % self.modulus

    def lift(self, value):
        return value % self.modulus


INTEGERS = Integers()


def evaluate(e: Expr, assignment: Mapping[Term, object], semiring: Semiring = INTEGERS):
    """Evaluate ``e`` with each term replaced by its assigned value."""

    def on_term(t):
        try:
            return semiring.lift(assignment[t])
        except KeyError:
            raise UnboundTermError(t) from None

    def on_sum(vals):
        acc = vals[0]
        for v in vals[1:]:
            acc = semiring.add(acc, v)
        return acc

    def on_product(vals):
        acc = vals[0]
        for v in vals[1:]:
            acc = semiring.mul(acc, v)
        return acc

    return fold(e, on_term, semiring.one, on_sum, on_product)


def canonical_sum(monomials) -> Expr:
    """Flat sum-of-products built from a set of monomials (sorted order)."""
    return add(*(mul(*m) for m in sorted(monomials, key=_mono_key)))


def _mono_key(mono):
    return tuple((t.index, t.kind) for t in mono)
