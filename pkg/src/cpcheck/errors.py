"""Exception types raised by cpcheck."""


class CpcheckError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(CpcheckError, ValueError):
    pass


class NotHermitian(CpcheckError, ValueError):
    pass


class NotPsd(CpcheckError, ValueError):
    pass


class NotPositiveDefinite(CpcheckError, ValueError):
    pass


class NotUnitary(CpcheckError, ValueError):
    pass


class NotCp(CpcheckError, ValueError):
    """The map's Choi matrix is not Hermitian positive semidefinite."""


class ZeroMap(CpcheckError, ValueError):
    """The map is identically zero and has no non-empty Kraus set."""


class ParameterOutOfRange(CpcheckError, ValueError):
    pass


class NumericalFailure(CpcheckError, ArithmeticError):
    pass


class NoConvergence(NumericalFailure):
    """The Jacobi eigensolver hit its sweep limit."""


class SingularNormalization(NumericalFailure):
    """Random Kraus matrices could not be whitened to a trace-preserving set."""
