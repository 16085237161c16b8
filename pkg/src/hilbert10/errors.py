"""Exception hierarchy shared by every module of the workbench."""


class WorkbenchError(Exception):
    """Base class for all errors raised by hilbert10."""


class ParseError(WorkbenchError, ValueError):
    """Malformed machine file, expression or polynomial source."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DeterminismError(WorkbenchError, ValueError):
    def __init__(self, state, symbol):
        self.state = state
        self.symbol = symbol
        super().__init__(
            f"two quadruples share state q{state} and symbol {symbol}"
        )


class ResourceLimit(WorkbenchError):
    """A request exceeds a configured cap (fuel, rounds, box size, ...)."""


class TraceCapExceeded(ResourceLimit):
    pass


class IllFormedExpr(WorkbenchError, ValueError):
    pass


class ArityMismatch(WorkbenchError, ValueError):
    pass


class BudgetExhausted(WorkbenchError):
    """Primitive recursive evaluation ran out of recursion unfoldings."""

    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"recursion budget of {budget} unfoldings exhausted")


class UnsupportedCoefficient(WorkbenchError, ValueError):
    pass


class NonNaturalExponent(ParseError):
    pass


class DimensionMismatch(WorkbenchError, ValueError):
    pass


class DegreeTooHigh(WorkbenchError, ValueError):
    pass
