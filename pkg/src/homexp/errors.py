"""Exception types shared across the package."""

from __future__ import annotations


class HomexpError(Exception):
    """Base class for all errors raised by this package."""


class ZeroRealPart(HomexpError):
    """A dual number with (near-)zero real part was used as a divisor.

    Pure-dual numbers are zero divisors of the dual ring and have no inverse.
    """


class PoleAtT(HomexpError):
    """A scalar-function denominator vanishes at the requested parameter."""

    def __init__(self, t: float, detail: str = ""):
        self.t = t
        super().__init__(f"denominator vanishes at t={t!r}" + (f" ({detail})" if detail else ""))


class NullVector(HomexpError):
    """The Lorentzian norm is undefined: the real part lies on the null cone."""


class SingularRealPart(HomexpError):
    """A dual matrix whose real part is singular cannot be inverted."""


class NotAntisymmetric(HomexpError):
    """The matrix is not Lorentz anti-symmetric within tolerance."""


class SingularHprime(HomexpError):
    """The first derivative of the motion matrix is singular: no unique pole."""

    def __init__(self, t: float, detail: str = ""):
        self.t = t
        super().__init__(f"motion matrix derivative singular at t={t!r}"
                         + (f" ({detail})" if detail else ""))


class InvalidFamilyConstants(HomexpError, ValueError):
    """Constants passed to an exceptional-family constructor are inconsistent."""


class ParseError(HomexpError, ValueError):
    """A configuration file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        loc = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(message + loc)


class ValidationError(HomexpError, ValueError):
    """A configuration parsed but violates a model invariant."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
