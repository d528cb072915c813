"""Exception types shared across the package."""


class NoSolution(ValueError):
    """A linear system has no solution (or a matrix is singular)."""


class FieldMismatch(ValueError):
    pass


class AlgebraMismatch(ValueError):
    pass


class MalformedQuiver(ValueError):
    pass


class InfiniteDimensional(ValueError):
    """Path enumeration did not terminate below the configured length bound."""


class UnsupportedAlgebra(ValueError):
    """Operation needs vertex idempotents / radical data the algebra does not carry."""


class NotProjective(ValueError):
    pass


class CutoffExceeded(RuntimeError):
    """A projective resolution was cut before it could answer the question."""

    def __init__(self, message, cutoff=None):
        super().__init__(message)
        self.cutoff = cutoff


class UndecidedIsomorphism(RuntimeError):
    """Randomised isomorphism search was inconclusive.

    Kept distinct from a negative verdict on purpose.
    """


class SchemaError(ValueError):
    """An input file violates the expected layout; ``path`` names the field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
