"""Exception hierarchy shared by every module."""


class TaylorForgeError(Exception):
    """Base class for all library errors."""


class OrderExceededError(TaylorForgeError, ValueError):
    pass


class CenterMismatchError(TaylorForgeError, ValueError):
    pass


class DomainError(TaylorForgeError, ValueError):
    pass


class DegenerateProblemError(DomainError):
    pass


class InsufficientCoefficientsError(TaylorForgeError, ValueError):
    pass


class DescriptorError(TaylorForgeError, ValueError):
    """Malformed JSON problem descriptor; ``field`` names the offending key."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class NumericFailure(TaylorForgeError, ArithmeticError):
    """Base for failures of the floating point computation itself."""


class SeriesOverflowError(NumericFailure, OverflowError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"floating overflow while computing index {index}")


class SingularCenterError(NumericFailure):
    pass


class NearSingularError(NumericFailure):
    pass


class SelfCheckError(NumericFailure):
    pass
