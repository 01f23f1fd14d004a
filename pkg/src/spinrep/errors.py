"""Exception types shared by the library and the CLI."""


class SpinrepError(Exception):
    """Base class for library errors."""


class ValidationError(SpinrepError, ValueError):
    """Input is not a valid operator/state for the requested operation."""


class NumericalError(SpinrepError, ArithmeticError):
    """A numerical step (root pairing, class extraction) failed its tolerance."""


class PairingError(NumericalError):
    """Stars could not be matched into antipodal pairs within tolerance."""


class ClassExtractionError(NumericalError):
    """Representative stars do not reproduce the block vector up to sign."""


class InputError(SpinrepError, ValueError):
    """A file or argument could not be parsed."""
