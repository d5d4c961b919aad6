"""Exception hierarchy shared by all modules.

Every error raised on purpose derives from :class:`CurveError`, so the CLI can
turn it into a structured error object with a stable ``kind`` string.
"""


class CurveError(Exception):
    """Base class for all computation errors of the package."""

    @property
    def kind(self):
        return type(self).__name__

    def to_dict(self):
        return {"kind": self.kind, "message": str(self)}


# exact_linalg
class PrimeDisagreement(CurveError):
    pass


class SingularMatrix(CurveError):
    pass


# poly_ring
class PolynomialSyntaxError(CurveError, ValueError):
    pass


class NotHomogeneous(CurveError, ValueError):
    def __init__(self, first_degree, other_degree):
        self.degrees = (first_degree, other_degree)
        super().__init__(
            f"polynomial is not homogeneous: found terms of degree "
            f"{first_degree} and {other_degree}"
        )


class InvalidCurve(CurveError, ValueError):
    pass


class DegenerateLine(CurveError):
    pass


# jacobian
class NoPlateau(CurveError):
    pass


class NegativeDimension(CurveError):
    pass


class CrossCheckFailure(CurveError):
    pass


class InconsistentTable(CurveError):
    pass


class ExponentMismatch(CurveError):
    pass


class DegreeMismatch(CurveError, ValueError):
    pass


# singular_locus
class ChartFailure(CurveError):
    pass


class NotFinite(CurveError):
    pass


class RobustnessFailure(CurveError):
    pass


# monodromy
class NegativeMultiplicity(CurveError):
    pass


# arrangements
class NotNearlyFree(CurveError):
    pass


class InvalidArrangement(CurveError, ValueError):
    pass


# catalog
class UnknownName(CurveError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
