"""Exception hierarchy shared by every module."""


class CoinductError(Exception):
    """Base class for all errors raised by this package."""


class BudgetError(CoinductError):
    """A configured search budget was exhausted before an answer was found.

    ``best`` carries whatever partial result the caller had when the budget
    ran out (for example the largest certificate found so far).
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class UnknownRegionError(CoinductError):
    pass


class GroupMismatchError(CoinductError):
    pass


class InfiniteIndexError(CoinductError):
    pass


class SpecError(CoinductError):
    """Invalid experiment spec: syntax, undeclared names, arity."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


class UndeclaredNameError(SpecError):
    def __init__(self, name, line=None, col=None):
        super().__init__(f"undeclared name {name!r}", line, col)
        self.name = name


class ArityError(SpecError):
    pass
