"""Exception types raised by symnorm."""


class DomainError(ValueError):
    """Input outside the domain of an operation (bad grid size, mismatched grids, ...)."""


class DegenerateDecompositionError(DomainError):
    """The norm is equivalent to the sup norm on the grid, so it has no continuous part."""


class AliasingError(DomainError):
    """A kernel or mean was requested at an order the grid cannot represent."""
