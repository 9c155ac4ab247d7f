"""Exception types shared across the package."""


class ContractViolationError(ValueError):
    """An operation was called with arguments violating its contract."""


class SamplingError(RuntimeError):
    """An evaluator returned a non-finite value during circle sampling.

    Carries the offending sample point in ``point``.
    """

    def __init__(self, msg, point=None):
        super().__init__(msg)
        self.point = point


class NotSelfMapError(ValueError):
    """A map claimed to send the unit disc (or right half-plane) into itself
    failed the sampling check."""


class NonConvergenceError(RuntimeError):
    """An iterative procedure did not converge within its budget.

    ``tail`` holds the last few iterates for diagnosis.
    """

    def __init__(self, msg, tail=()):
        super().__init__(msg)
        self.tail = list(tail)


class LowSmoothnessError(NonConvergenceError):
    """Radial derivative extrapolation failed to stabilize.

    ``order`` names the first derivative order whose estimates disagree.
    """

    def __init__(self, msg, order, tail=()):
        super().__init__(msg, tail)
        self.order = order


class HypothesisViolationError(ValueError):
    """A spectral prediction was requested outside the scope of the
    supporting theorem.  ``precondition`` names the failed hypothesis."""

    def __init__(self, msg, precondition=""):
        super().__init__(msg)
        self.precondition = precondition or msg


class UnknownCatalogueIdError(KeyError):
    """Requested catalogue entry does not exist."""
