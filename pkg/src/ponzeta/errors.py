"""Exception hierarchy shared by every ponzeta module."""


class PonzetaError(Exception):
    """Base class for library errors."""


class ParseError(PonzetaError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotDiagonal(PonzetaError, ValueError):
    """A normal form has a monomial (a†)^j a^k with j != k."""


class CutoffOverflow(PonzetaError):
    """An operator produced a state above the Fock cutoff."""

    def __init__(self, index: int, cutoff: int):
        super().__init__(f"state index {index} exceeds cutoff {cutoff}")
        self.index = index
        self.cutoff = cutoff


class InexactError(PonzetaError, ValueError):
    """The requested exact precision mode cannot represent a result."""


class PrimeBoundTooSmall(PonzetaError, ValueError):
    pass


class NotPrime(PonzetaError, ValueError):
    pass


class DivergentParameters(PonzetaError, ValueError):
    """Parameters lie outside the region where the series converges."""


class QuadratureError(PonzetaError):
    def __init__(self, message: str, error_estimate):
        super().__init__(f"{message} (achieved error estimate {error_estimate})")
        self.error_estimate = error_estimate
