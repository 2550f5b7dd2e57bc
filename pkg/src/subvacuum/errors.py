"""Exception hierarchy shared by every module of the package."""


class SubvacuumError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SubvacuumError, ValueError):
    """Argument outside the domain of a function (e.g. K at z = 0)."""


class PoleError(SubvacuumError, ValueError):
    """Argument sits on a pole of a meromorphic function."""


class RangeError(SubvacuumError, ValueError):
    """Integer parameter outside its admissible range."""


class ConvergenceError(SubvacuumError, ArithmeticError):
    """A series or iteration did not reach its tolerance within its budget."""


class DivergenceError(SubvacuumError, ArithmeticError):
    """The requested quantity is genuinely infinite (e.g. D=2 massless bath)."""


class QuadratureError(SubvacuumError, ArithmeticError):
    """Numerical integration failed to meet its tolerance."""


class ExtrapolationError(SubvacuumError, ArithmeticError):
    """A Richardson sequence did not settle."""


class DivisionError(SubvacuumError, ZeroDivisionError):
    """A ratio was requested whose denominator vanishes."""
