"""Exception hierarchy.

``InputError`` subclasses mean the caller asked for something outside an
operation's domain; ``NumericalError`` subclasses mean a numerical route did
not reach its tolerance; ``HypothesisViolation`` means a mathematical
precondition on the data fails.  ``CrossMethodMismatch`` and
``BoundViolated`` indicate bugs, not data conditions.
"""


class LidstoneError(Exception):
    pass


class InputError(LidstoneError, ValueError):
    pass


class NumericalError(LidstoneError, ArithmeticError):
    pass


class HypothesisViolation(LidstoneError):
    pass


class CrossMethodMismatch(LidstoneError, AssertionError):
    def __init__(self, t, methods=()):
        self.t = t
        self.methods = tuple(methods)
        super().__init__(f"Lidstone generators disagree at t={t}: {', '.join(self.methods)}")


class BoundViolated(LidstoneError, AssertionError):
    def __init__(self, which, z, lhs, rhs):
        self.which = which
        self.z = z
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{which} bound violated at z={z!r}: {lhs!r} > {rhs!r}")


class PoleAtZeta(InputError):
    pass


class PoleGuard(InputError):
    pass


class RadiusOutOfRange(InputError):
    pass


class InsideTypeDisk(InputError):
    pass


class InsufficientTaylorData(NumericalError):
    pass


class TailTooLarge(NumericalError):
    pass


class NonConverged(NumericalError):
    def __init__(self, message, value=None, error_estimate=None):
        self.value = value
        self.error_estimate = error_estimate
        super().__init__(message)


class DivergenceDetected(NumericalError):
    """Raised by the interpolation solver; the computed result rides along."""

    def __init__(self, message, result=None):
        self.result = result
        super().__init__(message)


class NotEvenVanishing(HypothesisViolation):
    def __init__(self, t, point, value, bound):
        self.t = t
        self.point = point
        self.value = value
        self.bound = bound
        super().__init__(
            f"f^({t})({point}) = {value!r} exceeds tolerance {bound!r}"
        )
