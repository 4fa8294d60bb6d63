"""Exception hierarchy shared by every module in the package."""


class UnionValsError(ValueError):
    """Base class for all library errors."""


class DuplicatePlayer(UnionValsError):
    pass


class UnknownPlayer(UnionValsError):
    pass


class UnknownPlayerInCoalition(UnknownPlayer):
    pass


class MissingCoalition(UnionValsError):
    pass


class NonzeroEmptyWorth(UnionValsError):
    pass


class RosterTooLarge(UnionValsError):
    pass


class InvalidPartition(UnionValsError):
    pass


class SingletonSplit(UnionValsError):
    pass


class EmptyRestriction(UnionValsError):
    pass


class CoalitionOutsideBlock(UnionValsError):
    pass


class WeightUndefined(UnionValsError):
    pass


class InvalidSearchSpace(UnionValsError):
    pass


class DocumentSyntaxError(UnionValsError):
    """Game file is not well-formed (bad JSON, wrong field types)."""


class DocumentValidationError(UnionValsError):
    """Game file is well-formed but describes an invalid game."""
