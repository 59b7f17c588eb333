"""Exception types shared across the package."""


class TropclustError(Exception):
    """Base class for all library errors."""


class ZeroPolynomial(TropclustError, ValueError):
    """Degree or valuation requested for the zero polynomial."""


class ShapeMismatch(TropclustError, ValueError):
    """Index sets of a minor differ in size or fall outside the matrix."""


class NodeOutOfRange(TropclustError, IndexError):
    """Mutation index outside 1..n."""


class SingularPivot(TropclustError, ArithmeticError):
    """A determinant needed by a matrix map vanished at this evaluation point."""


class HasFrozenFactor(TropclustError, ValueError):
    """Tableau still contains a column of consecutive entries."""


class NotAFactor(TropclustError, ValueError):
    """Quotient requested by a tableau that is not a row-wise factor."""


class NotSemistandard(TropclustError, ValueError):
    """Columns cannot be arranged into a semistandard rectangle."""


class UnboundVariable(TropclustError, KeyError):
    """Expression references a variable with no assigned value."""


class ExprSyntaxError(TropclustError, SyntaxError):
    """Malformed subtraction-free expression; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class NegativeLiteral(ExprSyntaxError):
    """Literal below 1 in a subtraction-free expression."""


class CapTooSmall(TropclustError, ValueError):
    """Orbit was built with a degree cap below the requested range."""


class Inconclusive(TropclustError, RuntimeError):
    """Stability test reached its iteration budget without a verdict."""
