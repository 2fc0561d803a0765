"""Exception hierarchy shared by every module of the package."""


class STCommuteError(Exception):
    """Base class for all package errors."""


class DivisionByZero(STCommuteError, ZeroDivisionError):
    pass


class OverflowToFloat(STCommuteError, OverflowError):
    pass


class DimensionMismatch(STCommuteError, ValueError):
    pass


class SingularMatrix(STCommuteError, ArithmeticError):
    pass


class NotNilpotent(STCommuteError, ValueError):
    pass


class VariableCountMismatch(STCommuteError, ValueError):
    pass


class SymbolicBlowup(STCommuteError):
    """A symbolic entry outgrew the configured term ceiling.

    Callers are expected to fall back to randomized instantiation.
    """

    def __init__(self, terms, ceiling):
        super().__init__(f"symbolic entry reached {terms} terms (ceiling {ceiling})")
        self.terms = terms
        self.ceiling = ceiling


class NoConvergence(STCommuteError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or []


class HypothesisViolated(STCommuteError, ValueError):
    """The pair does not satisfy A(AB - BA) = (AB - BA)A."""


class UnknownScenario(STCommuteError, KeyError):
    pass
