"""Exception hierarchy shared by every module in the package."""


class FilterHomeoError(Exception):
    pass


class MalformedInputError(FilterHomeoError, ValueError):
    """A literal or raw description could not be turned into a point."""


class DomainError(FilterHomeoError, ValueError):
    """An operation was applied outside its domain (containment, disjointness, finiteness)."""


class ShapeError(DomainError):
    """Two homeomorphisms could not be glued because their shapes disagree."""


class WitnessError(DomainError):
    """A filter is missing a witness set, or the witness fails its side conditions."""


class UnsupportedCaseError(FilterHomeoError):
    pass


class GenerationError(FilterHomeoError, RuntimeError):
    """A constrained random draw could not be satisfied within the round cap."""
