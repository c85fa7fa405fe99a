"""Exception types shared across the package."""


class BGroupError(Exception):
    pass


class InvalidPermutation(BGroupError, ValueError):
    pass


class CapExceeded(BGroupError):
    """A group or lattice grew past the configured resource cap."""


class LatticeTooLarge(CapExceeded):
    pass


class NotNormal(BGroupError, ValueError):
    pass


class NotPrime(BGroupError, ValueError):
    pass


class UnidentifiedSimpleFactor(BGroupError):
    def __init__(self, order, invariants):
        self.order = order
        self.invariants = invariants
        super().__init__(f"nonabelian simple factor of order {order} not in catalogue: {invariants}")


class MarkCheckFailed(BGroupError, AssertionError):
    pass


class NotProportional(BGroupError, AssertionError):
    pass


class Disagreement(BGroupError, AssertionError):
    pass


class HypothesisViolated(BGroupError, ValueError):
    pass


class ParseError(BGroupError, ValueError):
    pass


class ConditionViolated(BGroupError, ValueError):
    pass


class CacheIOError(BGroupError, OSError):
    pass
