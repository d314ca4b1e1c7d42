"""Exception hierarchy shared by all engine modules."""


class TautiltError(Exception):
    """Base class for all engine errors."""


class ContractViolation(TautiltError):
    """A caller broke a documented precondition (dimension mismatch etc.)."""


class ParseError(TautiltError):
    """Syntax or semantic error in the algebra DSL."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class NotAdmissibleError(TautiltError):
    """The relation ideal fails an admissibility requirement."""


class CapExceededError(TautiltError):
    """A configured cap was hit before the computation could finish."""


class NotCertifiableError(TautiltError):
    """An exact certificate over the rationals could not be produced.

    Raised e.g. when an endomorphism ring has a residue division algebra of
    dimension > 1, so absolute indecomposability cannot be certified without
    extending the base field.
    """


class DomainError(TautiltError):
    """Input is structurally fine but outside the operation's domain
    (module not tau-rigid, class not a torsion class, ...)."""
