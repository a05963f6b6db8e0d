"""Exception and warning types.  ``code`` is the machine-readable name used by the CLI."""


class OTLabError(ValueError):
    code = "OTLabError"


class NotMonic(OTLabError):
    code = "NotMonic"


class ReduciblePolynomial(OTLabError):
    code = "ReduciblePolynomial"

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class InconclusiveIrreducibility(OTLabError):
    code = "InconclusiveIrreducibility"


class PrecisionExhausted(OTLabError):
    code = "PrecisionExhausted"


class RankDeficientUnits(OTLabError):
    code = "RankDeficientUnits"


class NoRealPlace(OTLabError):
    code = "NoRealPlace"


class NoComplexPlace(OTLabError):
    code = "NoComplexPlace"


class NotTotallyPositive(OTLabError):
    code = "NotTotallyPositive"


class NotLCKManifold(OTLabError):
    code = "NotLCKManifold"


class EmptyCloud(OTLabError):
    code = "EmptyCloud"


class MaybeNonMaximal(UserWarning):
    """Z[theta] may be a proper suborder of the ring of integers (disc not squarefree)."""


class InvalidPolynomial(OTLabError):
    code = "InvalidPolynomial"
