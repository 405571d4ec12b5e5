"""Exception types shared across the package."""


class IncompatibleTowers(ValueError):
    """Arithmetic between elements whose fields are not prefix-related."""


class InvalidTower(ArithmeticError):
    """A tower turned out to be degenerate (a radicand was a square below)."""


class DivisionByZero(ZeroDivisionError):
    """Exact division by a zero element."""


class NegativeRadicand(ValueError):
    """Square root requested of a certified-negative quantity."""


class Inconclusive(ArithmeticError):
    """A certified sign test exhausted its precision cap."""


class ParseError(ValueError):
    """Malformed scalar expression; ``offset`` is the byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class ZeroAxis(ValueError):
    """A direction vector that cannot be normalized."""


class NonUnitAxis(ValueError):
    """Axis components fail a^2 + b^2 + c^2 = 1 under the backend equality."""


class InvalidAngle(ValueError):
    """Angle pair fails cos^2 + sin^2 = 1 under the backend equality."""


class NotOrthogonal(ValueError):
    """Input matrix fails the orthogonality check; carries the residual."""

    def __init__(self, residual: float):
        super().__init__(f"matrix is not orthogonal (residual {residual:.3e})")
        self.residual = residual
