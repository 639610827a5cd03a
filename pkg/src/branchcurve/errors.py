"""Exception hierarchy shared by every module."""


class BranchCurveError(Exception):
    """Base class for all library errors."""


class DomainError(BranchCurveError):
    """Invalid coefficient-domain construction or conversion."""


class DomainMismatch(BranchCurveError):
    """Operands live over different domains or have different variable counts."""


class SingularMatrix(BranchCurveError):
    pass


class ZeroInput(BranchCurveError):
    pass


class ZeroLeadingCoefficient(BranchCurveError):
    pass


class PositiveDimensionalIntersection(BranchCurveError):
    """The system has a common curve component, not finitely many points."""


class ShearBudgetExhausted(BranchCurveError):
    """No admissible separating shear was found within the retry budget."""


class NegativeGenus(BranchCurveError):
    pass


class RetryBudgetExhausted(BranchCurveError):
    """Frame sampling kept producing degenerate projections."""

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = attempts or []


class NonReducedBranch(BranchCurveError):
    pass


class CenterOnSurface(BranchCurveError):
    pass


class LineInSurface(BranchCurveError):
    pass


class DegenerateLine(BranchCurveError):
    pass


class NotFilling(BranchCurveError):
    pass


class InconsistentInvariants(BranchCurveError):
    pass


class NonHomogeneousInput(BranchCurveError):
    pass


class PolynomialSyntaxError(BranchCurveError, SyntaxError):
    """Parse failure; ``position`` is the 0-based offset into the input text."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
