"""Exception hierarchy.

Everything raised on purpose derives from :class:`ZetalabError`.  Domain
errors (bad mathematical input, failed checks) derive from
:class:`DomainError`; malformed input files raise :class:`ParseError`.  The
CLI maps the two families to exit codes 2 and 1.
"""


class ZetalabError(Exception):
    pass


class DomainError(ZetalabError):
    pass


class ParseError(ZetalabError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


# finite fields
class NotPrime(DomainError):
    pass


class DegreeZero(DomainError):
    pass


class DivideByZero(DomainError, ZeroDivisionError):
    pass


class FieldMismatch(DomainError):
    pass


# point counting
class NonHomogeneous(DomainError):
    pass


class ZeroCoefficient(DomainError):
    pass


# Dirichlet series
class TruncationMismatch(DomainError):
    pass


class NotAUnit(DomainError):
    pass


class MissingPrime(DomainError):
    pass


# zeta functions over finite fields
class InsufficientCounts(DomainError):
    pass


class InconsistentCounts(DomainError):
    pass


class NoRecurrence(DomainError):
    pass


class NotACurveZeta(DomainError):
    pass


class NoFunctionalEquation(DomainError):
    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


# characters, analytic
class NotCoprime(DomainError):
    pass


class DivergentRegion(DomainError):
    pass


class PoleAtOne(DomainError):
    pass


class InsufficientZeros(DomainError):
    pass


class BelowThreshold(DomainError):
    pass


# elliptic curves
class SingularCurve(DomainError):
    pass


class BadReduction(DomainError):
    pass
