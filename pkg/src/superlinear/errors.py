"""Exception hierarchy shared by all modules."""


class ContractError(ValueError):
    """A documented precondition was violated by the caller."""


class InvalidVertexError(ContractError):
    """A vertex id is out of range or refers to a deleted vertex."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search ran past its vertex or node budget."""


class InfeasibleError(ValueError):
    """The instance provably has no coloring of the requested kind."""


class ExtensionError(RuntimeError):
    """A reduction recipe could not extend a coloring.

    The recipes only pick colors where a free one is guaranteed, so this
    signals an internal bug; ``trace`` carries the choices made so far.
    """

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])
