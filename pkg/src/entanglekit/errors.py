"""Exception types shared across the package."""


class SchemaError(ValueError):
    """A state file is structurally malformed (wrong shape, type, or field).

    ``location`` is a JSONPath-style pointer to the offending element.
    """

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location


class ZeroVectorError(ValueError):
    """An operation that needs a nonzero vector received the zero vector."""


class InternalConsistencyError(RuntimeError):
    """Two redundant computations of the same quantity disagreed.

    Raised when paired checks (e.g. rank-based and purity-based pureness,
    or the two constructions of a product projector) fall on opposite
    sides of the tolerance; this signals a bug or a tolerance pathology,
    never a property of the input state.
    """
