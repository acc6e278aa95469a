"""Exception types raised across the package."""


class FibExprError(Exception):
    """Base class for every error raised by fibexpr."""


class InvalidSizeError(FibExprError, ValueError):
    pass


class SizeGuardError(FibExprError):
    """Generation refused because the output would be exponentially large."""

    def __init__(self, method, n, cap):
        self.method = method
        self.n = n
        self.cap = cap
        super().__init__(
            f"{method}: n={n} exceeds the generation cap {cap}; "
            "pass force=True (CLI: --force) to generate anyway"
        )


class UnsupportedInputError(FibExprError, ValueError):
    pass


class InvalidExpressionError(FibExprError, ValueError):
    pass


class ExprSyntaxError(FibExprError, ValueError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class UnboundTermError(FibExprError, KeyError):
    def __init__(self, term):
        self.term = term
        super().__init__(f"no value assigned to term {term}")

    def __str__(self):
        return self.args[0]


class ReductionNotApplicableError(FibExprError):
    pass


class InvalidScheduleError(FibExprError, ValueError):
    pass


class NoReductionsNeededError(FibExprError, ValueError):
    pass


class InvalidChoiceError(FibExprError, ValueError):
    def __init__(self, p, q, i):
        self.interval = (p, q)
        self.choice = i
        super().__init__(
            f"decomposition vertex {i} is not strictly inside interval ({p}, {q})"
        )


class InvalidPartCountError(FibExprError, ValueError):
    pass


class CountOverflowError(FibExprError, OverflowError):
    """A count left the 128-bit range."""

    def __init__(self, what, n):
        self.n = n
        super().__init__(f"{what} overflows 128 bits at n={n}")
