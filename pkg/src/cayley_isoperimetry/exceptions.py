class ToolkitError(ValueError):
    """Base class for all errors raised by the toolkit.

    Subclasses ValueError so callers that guard computations with
    ``except ValueError`` keep working.
    """


class AlphabetError(ToolkitError):
    """A word uses a letter outside the backend's alphabet."""


class SymmetryError(ToolkitError):
    """A generating set is not closed under inversion."""


class EmptySetError(ToolkitError):
    """A set construction produced no elements."""


class InputError(ToolkitError):
    """Malformed input data (duplicates, empty pools, disconnected graphs)."""


class AssociativityError(InputError):
    """A multiplication table fails the group axioms."""


class ParameterError(ToolkitError):
    """A numeric parameter is outside its admissible range."""


class DomainError(ToolkitError):
    """An operation was called on an unsupported kind of group or value."""


class HypothesisError(ToolkitError):
    """The hypotheses of a cited theorem are not met."""


class UnsupportedError(ToolkitError):
    """The computation is not available for this input at desk scale."""


class UnsolvableInstanceError(ToolkitError):
    """Exact values needed for an inequality check are not known."""


class NotTransitiveError(ToolkitError):
    """A check that needs a vertex-transitive graph got something else."""


class ConfigValidationError(ToolkitError):
    """A job configuration violates the schema."""
