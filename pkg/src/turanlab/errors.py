"""Exception types shared across the library."""


class TuranLabError(Exception):
    """Base class for all library errors."""


class InvalidHypergraphError(TuranLabError):
    """Hypergraph or pattern data violates a structural invariant."""


class InvalidArgumentError(TuranLabError):
    """An operation received arguments outside its contract."""


class UnsupportedSizeError(TuranLabError):
    """An input exceeds a documented size cap."""


class OutOfRangeError(TuranLabError):
    """A numeric argument falls outside its admissible range."""


class ParseError(TuranLabError):
    """JSON input could not be parsed or validated."""


class OptimizerFailureError(TuranLabError):
    """The simplex optimizer failed to converge.

    The best candidate found so far, if any, is kept in ``best_so_far``.
    """

    def __init__(self, message, best_so_far=None):
        super().__init__(message)
        self.best_so_far = best_so_far


class CertificateError(TuranLabError):
    """Certificate conditions failed; ``failures`` lists each failed one."""

    def __init__(self, failures):
        failures = tuple(failures)
        super().__init__("; ".join(failures))
        self.failures = failures
