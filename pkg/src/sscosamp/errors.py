"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Incompatible or invalid array dimensions."""


class IndexRangeError(ValueError):
    """An index or offset outside its valid range."""


class InfeasibleSeparationError(ValueError):
    """No support of the requested size can have the requested separation."""


class EnumerationSizeError(ValueError):
    """An exhaustive enumeration would exceed the configured cap."""


class HypothesisViolatedError(ValueError):
    """Recovery-guarantee hypotheses do not hold for the given constants."""


class SingularSubmatrixError(ValueError):
    """A gram submatrix is numerically singular."""


class MismatchedInputError(ValueError):
    """Two results that must share inputs were computed on different ones."""


class ZeroSignalError(ValueError):
    """A reference signal has zero norm."""


class SolverNonconvergenceError(RuntimeError):
    """The basis pursuit solver hit its iteration limit before converging.

    ``last_iterate`` holds the final coefficient vector and ``outcome`` (when
    raised from a projection) the best-effort projection built from it.
    """

    def __init__(self, message, last_iterate=None, iterations=0, outcome=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.iterations = iterations
        self.outcome = outcome
