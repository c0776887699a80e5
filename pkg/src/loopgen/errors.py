"""Exception hierarchy shared by every stage of the pipeline."""


class LoopError(Exception):
    """Base class for all loopgen errors."""


class MalformedTable(LoopError):
    pass


class NotLatinSquare(LoopError):
    pass


class NoIdentity(LoopError):
    pass


class NotPowerAssociative(LoopError):
    def __init__(self, witness):
        super().__init__(f"element {witness} does not generate a group")
        self.witness = witness


class ConstructionInvariantViolated(LoopError):
    pass


class ResourceLimit(LoopError):
    """Raised when the subloop registry grows past its configured cap."""


class SearchBudgetExceeded(ResourceLimit):
    pass


class BudgetExceeded(ResourceLimit):
    pass
