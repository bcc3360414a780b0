"""Package-specific exceptions."""


class UnsupportedOracleError(ValueError):
    """Requested oracle cannot be evaluated for this environment variant."""


class TruncationError(RuntimeError):
    """Fock-space truncation too small for the requested accuracy.

    Attributes
    ----------
    suggested_dim : int or None
        A truncation level expected to be adequate, when one can be estimated.
    result : OracleResult or None
        The (inaccurate) result computed at the rejected truncation, if the
        computation ran to completion before the tail check failed.
    """

    def __init__(self, message, suggested_dim=None, result=None):
        super().__init__(message)
        self.suggested_dim = suggested_dim
        self.result = result
