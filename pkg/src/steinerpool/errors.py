"""Exception types shared across the package."""


class DesignError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionViolated(DesignError, ValueError):
    pass


class DuplicateBlock(DesignError, ValueError):
    pass


class PointOutOfRange(DesignError, ValueError):
    pass


class NotABijection(DesignError, ValueError):
    pass


class NonIntegralParameters(DesignError, ValueError):
    pass


class NotATDesign(DesignError):
    """Raised with a witness t-subset whose coverage deviates from the rest."""

    def __init__(self, msg, witness=None, count=None, expected=None):
        super().__init__(msg)
        self.witness = witness
        self.count = count
        self.expected = expected


class SearchBudgetExceeded(DesignError):
    def __init__(self, budget):
        super().__init__(f"search budget of {budget} nodes exhausted")
        self.budget = budget


class OrbitCollision(DesignError, ValueError):
    pass


class OrderDoesNotDivide(DesignError, ValueError):
    pass


class NotPrime(DesignError, ValueError):
    pass


class ConstructionFailed(DesignError):
    pass


class UnsupportedOrder(DesignError):
    pass


class NotASubdesign(DesignError, ValueError):
    pass


class NotASteinerDesign(DesignError, ValueError):
    pass


class OutOfRange(DesignError, ValueError):
    pass


class BracketFailure(DesignError, ArithmeticError):
    pass


class CoverageError(DesignError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class UncoveredSubset(CoverageError):
    pass


class MultiplyCoveredSubset(CoverageError):
    pass


class NotACovering(DesignError, ValueError):
    pass


class LengthMismatch(DesignError, ValueError):
    pass


class FormatError(DesignError, ValueError):
    """A text file does not follow the expected layout."""
