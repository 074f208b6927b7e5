"""Exception hierarchy shared by every module."""


class HGFRFTError(Exception):
    """Base class for all errors raised by the package."""


class NumericError(HGFRFTError, ArithmeticError):
    pass


class NotNormal(NumericError):
    pass


class NoConvergence(NumericError):
    pass


class ZeroEigenvalue(NumericError):
    pass


class RankDeficient(NumericError):
    pass


class UnstableSpeed(NumericError):
    """Wave speed violates the stability bound ``s < 4 / lambda_max``."""


class DimensionOverflow(HGFRFTError, ValueError):
    pass


class DimensionMismatch(HGFRFTError, ValueError):
    pass


class OrderMismatch(HGFRFTError, ValueError):
    pass


class IndexOutOfRange(HGFRFTError, IndexError):
    pass


class GraphError(HGFRFTError, ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NegativeWeight(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass
