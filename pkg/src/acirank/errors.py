"""Exception hierarchy shared by every module of the package."""


class AciError(Exception):
    """Base class for all errors raised by acirank."""


class DivisionByZero(AciError, ZeroDivisionError):
    pass


class MixedFields(AciError, TypeError):
    pass


class InfiniteField(AciError):
    """An operation needs a finite field but got the rationals."""


class UnknownField(AciError, ValueError):
    pass


class EntrySyntaxError(AciError, ValueError):
    """An entry expression does not match the grammar.

    ``position`` is the 0-based character offset where parsing stopped and
    ``expected`` lists the token kinds that would have been accepted there.
    """

    def __init__(self, message, text="", position=0, expected=()):
        super().__init__(message)
        self.text = text
        self.position = position
        self.expected = tuple(expected)


class NonAffine(AciError, ValueError):
    """An entry has a term of degree two or more."""


class ColumnSharing(AciError, ValueError):
    """The same indeterminate appears in two different columns."""


class UnknownIndeterminate(AciError, ValueError):
    pass


class MissingAssignment(AciError, KeyError):
    pass


class DimensionMismatch(AciError, ValueError):
    pass


class IndexOutOfRange(AciError, IndexError):
    pass


class BudgetExceeded(AciError):
    pass


class TooManyColumns(AciError):
    pass


class InternalAssertionFailed(AciError, AssertionError):
    """A postcondition that the theory guarantees did not hold."""


class FieldTooSmall(AciError):
    pass


class NotConstantRank(AciError):
    """Raised with two completions of different rank as evidence."""

    def __init__(self, message, low=None, high=None, low_rank=None, high_rank=None):
        super().__init__(message)
        self.low = low
        self.high = high
        self.low_rank = low_rank
        self.high_rank = high_rank

    @property
    def witnesses(self):
        return self.low, self.high


class ReductionFailed(AciError):
    pass
