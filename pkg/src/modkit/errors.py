"""Exception hierarchy shared by every modkit module."""


class ModkitError(Exception):
    """Base class for all modkit errors."""


class DomainError(ModkitError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class InvalidPartitionError(DomainError):
    pass


class SizeLimitError(DomainError):
    pass


class ConstructionError(DomainError):
    """Infeasible parameters for a graph family."""


class SamplingError(ModkitError, RuntimeError):
    """A rejection sampler exhausted its attempt budget."""


class NotAForestError(DomainError):
    pass


class NotUnicyclicError(DomainError):
    pass


class NoExtraEdgeError(DomainError):
    pass


class DecompositionError(DomainError):
    """A tree decomposition failed validation or exceeds the declared width."""


class MissingInputError(DomainError):
    pass


class NumericError(ModkitError, ArithmeticError):
    pass
