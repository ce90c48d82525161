"""Exception hierarchy shared by all modules."""


class CauchyIdError(Exception):
    """Base class for every error raised by this package."""


class ZeroConstantTerm(CauchyIdError, ZeroDivisionError):
    """A series with zero constant term has no reciprocal."""


class DivisionByZeroSeries(ZeroConstantTerm):
    """A parsed expression divides by a series with zero constant term."""


class LengthExceedsN(CauchyIdError, ValueError):
    def __init__(self, length, n):
        super().__init__(f"partition has {length} parts but n = {n}")
        self.length = length
        self.n = n


class IndexOutOfRange(CauchyIdError, IndexError):
    pass


class RepeatedPoints(CauchyIdError, ValueError):
    pass


class SingularEntry(CauchyIdError, ZeroDivisionError):
    pass


class NotStrictlyDecreasing(CauchyIdError, ValueError):
    pass


class ExpressionSyntaxError(CauchyIdError, ValueError):
    """Malformed generating-function text.

    ``pos`` is the 0-based character offset of the offending token and
    ``expected`` lists what the parser would have accepted there.
    """

    def __init__(self, text, pos, expected):
        self.text = text
        self.pos = pos
        self.expected = tuple(expected)
        found = repr(text[pos]) if pos < len(text) else "end of input"
        super().__init__(
            f"syntax error at position {pos}: expected {' or '.join(self.expected)}, found {found}"
        )


class UnsupportedComposition(CauchyIdError, ValueError):
    pass


class OutsideRadius(CauchyIdError, ValueError):
    pass


class UnsupportedAnalyticEval(CauchyIdError, ValueError):
    pass
