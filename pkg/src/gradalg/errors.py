"""Exception hierarchy shared by every module."""


class GradAlgError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class SizeBoundExceeded(GradAlgError):
    pass


class NotAQuadraticForm(GradAlgError):
    pass


class SamePolarizationRequired(GradAlgError):
    pass


class IdenticalForms(GradAlgError):
    pass


class CocycleVerificationFailed(GradAlgError):
    """Raised when a constructed cocycle violates its defining relations.

    This signals a construction bug, never bad user input.
    """


class PreconditionViolated(GradAlgError):
    pass


class UnrecognizedStructure(GradAlgError):
    pass


class UnsupportedExponent(GradAlgError):
    pass


class DegenerateBicharacter(GradAlgError):
    pass


class InternalDisagreement(GradAlgError):
    pass


class EmbeddingInvalid(GradAlgError):
    pass


class BasisMismatch(GradAlgError):
    pass


class NotADivisionGrading(GradAlgError):
    pass


class PolarizationMismatch(GradAlgError):
    pass


class NotSecondKind(GradAlgError):
    pass


class NonSquareSignature(GradAlgError):
    pass


class NotAnInvolution(GradAlgError):
    pass


class InconsistentParameters(GradAlgError):
    pass


class InvalidGroup(GradAlgError, ValueError):
    pass


class ParseError(GradAlgError, ValueError):
    """Text that does not describe an element, form or group."""
