"""Exception types shared across orbicensus.

Domain errors (bad mathematical input for an otherwise well-formed request)
derive from OrbifoldError; the CLI maps them to exit code 1.  Syntax errors
in signature text derive from ValueError and map to exit code 2, since a
malformed signature is a usage problem, not a domain one.
"""


class OrbifoldError(Exception):
    """Base class for domain errors."""


class InfiniteMultiplicityError(OrbifoldError):
    """A numeric operation hit a component with infinite multiplicity."""


class DimensionOneError(OrbifoldError):
    """Group-theoretic machinery requires ambient dimension >= 2.

    The classical dimension-1 rows are served from fixture data instead.
    """


class SubsetTooLargeError(OrbifoldError):
    """Stratum subsets deeper than the ambient dimension are empty."""


class NotUniformizableError(OrbifoldError):
    """Operation requires a uniformizable signature."""


class NonlinearLocusError(OrbifoldError):
    """Direct Euler computation is defined for linear loci only."""


class InfiniteQuotientError(OrbifoldError):
    """Quotient validity checks require a finite quotient group."""


class NonIntegerResultError(OrbifoldError):
    """An exact computation produced a non-integer where an integer is forced."""


class ConservationViolationError(OrbifoldError):
    """Group-order conservation failed along a covering edge."""


class EmptyLiftError(OrbifoldError):
    """A lift dropped every component; the result is not an orbifold."""


class SignatureSyntaxError(ValueError):
    """Malformed signature text; carries the 1-based column of the offence."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column
