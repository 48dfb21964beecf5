"""Exception types raised by scheme conversions, searches and integrators."""


class SchemeError(Exception):
    """Base class for all scheme-related errors."""


class NoDFormError(SchemeError):
    """Adjacent nodes coincide, so the node-ratio form does not exist.

    ``index`` is the 1-based position i with c[i+1] == c[i].
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"no d-form: nodes c[{index}] and c[{index + 1}] coincide")


class ZeroDenominatorError(SchemeError):
    """A conversion denominator vanished at stage ``index`` (1-based)."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"zero denominator at stage {index}")


class NotTwoNCompatibleError(SchemeError):
    """The tableau is not realizable with the two-register recursion."""

    def __init__(self, residual, message=None):
        self.residual = residual
        super().__init__(message or f"tableau is not 2N-compatible (residual {residual!r})")


class OutOfRangeError(SchemeError):
    """A stage/power argument is outside its admissible range."""


class WrongStageCountError(SchemeError):
    """Operation requires a specific stage count."""


class NonFiniteError(SchemeError):
    """The right-hand side or the state became non-finite.

    ``step`` is the index of the step at which the blow-up occurred.
    """

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"non-finite value at step {step}")


class DegenerateFitError(SchemeError):
    """Too few usable points (or non-positive errors) for a slope fit."""


class NoConvergenceError(SchemeError):
    """Newton iteration failed to reach the residual tolerance."""

    def __init__(self, iterations, message=None):
        self.iterations = iterations
        super().__init__(message or f"no convergence after {iterations} iterations")


class SingularJacobianError(SchemeError):
    """The Newton Jacobian is numerically singular."""


class SingularPointError(SchemeError):
    """Adjacent nodes collided during iteration; the point is degenerate."""


class DegenerateCaseError(SchemeError):
    """Closed-form construction does not apply at this parameter value."""


class UnknownSchemeError(SchemeError, KeyError):
    """Requested catalog entry does not exist."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown scheme {name!r}")
