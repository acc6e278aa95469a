from ..errors import InvalidSizeError, SizeGuardError

# Textual size of these methods grows exponentially in n.
EXPONENTIAL_CAP = 28
# Decomposition-type outputs are built as shared DAGs of polynomial size.
POLYNOMIAL_CAP = 10**5


def check_size(method, n, force=False, cap=EXPONENTIAL_CAP):
    if not isinstance(n, int) or n < 2:
        raise InvalidSizeError(f"{method}: n must be an integer >= 2, got {n!r}")
    if n > cap and not force:
        raise SizeGuardError(method, n, cap)
