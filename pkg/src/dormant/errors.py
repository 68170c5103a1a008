"""Exception hierarchy shared by every module.

``InputError`` subclasses signal caller mistakes (CLI exit code 2);
``ConsistencyError`` subclasses signal that a computed object contradicts
a structural theorem the library relies on (CLI exit code 3).
"""


class DormantError(Exception):
    pass


class InputError(DormantError, ValueError):
    pass


class ConsistencyError(DormantError):
    pass


class EmptyModuli(DormantError):
    """The boundary sets are empty, so the moduli curve is empty."""


class HypothesisViolation(InputError):
    pass


class IntegralityViolation(ConsistencyError):
    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class TriEqualityViolation(ConsistencyError):
    pass


class MembershipFailure(DormantError):
    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


class NonUnitRadius(InputError):
    pass


class DegenerateT(InputError):
    pass


class InfeasibleSigns(InputError):
    pass
