"""Exception hierarchy shared by every app.

``exit_code`` is what the ``dyer`` management command exits with when the
exception escapes an action.
"""


class DyerError(Exception):
    """Base class for domain errors."""
    exit_code = 1


class InvalidWeight(DyerError):
    pass


class InvalidDyerGraph(DyerError):
    pass


class InvalidDyerMatrix(DyerError):
    pass


class InvalidWord(DyerError):
    pass


class RankMismatch(DyerError):
    pass


class NotSpherical(DyerError):
    pass


class SeriesError(DyerError):
    pass


class GrowthRateError(DyerError):
    pass


class NoOrderMorphism(DyerError):
    pass


class FamilyError(DyerError):
    pass


class BudgetExceeded(DyerError):
    """A configured resource cap was hit; the computation gave no answer."""
    exit_code = 3


class ClosureBudgetExceeded(BudgetExceeded):
    pass


class BallBudgetExceeded(BudgetExceeded):
    pass


class RankCapExceeded(BudgetExceeded):
    pass


class RootBudgetExceeded(BudgetExceeded):
    pass
