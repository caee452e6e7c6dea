"""Exception hierarchy shared by all modules."""


class GenSineError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(GenSineError, ValueError):
    pass


class DomainError(GenSineError, ValueError):
    """Argument outside the domain of a quadrature or closed-form routine."""


class OutOfDomain(GenSineError, ValueError):
    """Evaluation point outside the maximal interval of analyticity."""


class NotAnalytic(GenSineError):
    """Requested continuation past 1/2 pi_{p,n} when p' is not an integer."""


class ConvergenceFailure(GenSineError, ArithmeticError):
    pass


class SingularReversion(GenSineError, ArithmeticError):
    pass


class OutOfDisk(GenSineError, ValueError):
    """Series evaluated too far from its center to be trusted."""


class InsufficientCoefficients(GenSineError, ValueError):
    pass
