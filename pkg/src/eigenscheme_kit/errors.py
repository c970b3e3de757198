"""Exception hierarchy shared by all modules."""


class EigenschemeError(Exception):
    """Base class for every error raised by the package."""


class FloatEntriesError(EigenschemeError, TypeError):
    """An exact routine received a floating point entry."""


class FieldMismatchError(EigenschemeError, TypeError):
    """Exact and floating point values were combined."""


class DegreeMismatchError(EigenschemeError, ValueError):
    pass


class ZeroVectorError(EigenschemeError, ValueError):
    pass


class EqualPointsError(EigenschemeError, ValueError):
    pass


class PolySyntaxError(EigenschemeError, ValueError):
    """Malformed polynomial or scalar text.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, position=None):
        self.position = position
        self.message = message
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class InhomogeneousInputError(EigenschemeError, ValueError):
    pass


class DegreeTooSmallError(EigenschemeError, ValueError):
    pass


class ZeroTripleError(EigenschemeError, ValueError):
    pass


class WrongCardinalityError(EigenschemeError, ValueError):
    pass


class DuplicatePointsError(EigenschemeError, ValueError):
    pass


class CharacterInconsistentError(EigenschemeError, ArithmeticError):
    pass


class BudgetExceededError(EigenschemeError, RuntimeError):
    pass


class IdentityViolatedError(EigenschemeError, ValueError):
    pass


class InconsistentSystemError(EigenschemeError, ValueError):
    """A linear system that was expected to be solvable has no solution."""


class ZeroInputError(EigenschemeError, ValueError):
    pass


class NoConvergenceError(EigenschemeError, ArithmeticError):
    pass


class PositiveDimensionalError(EigenschemeError, ArithmeticError):
    pass


class RootsNotInFieldError(EigenschemeError, ValueError):
    pass


class ZeroFormError(EigenschemeError, ValueError):
    pass


class NotOnIsotropicConicError(EigenschemeError, ValueError):
    pass


class NotTangentFamilyError(EigenschemeError, ValueError):
    pass
