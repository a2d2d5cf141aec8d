"""Exception hierarchy.  Every error maps to one CLI exit code."""


class SwanKinkError(Exception):
    exit_code = 6


class UsageError(SwanKinkError):
    exit_code = 1


class SchemaError(SwanKinkError):
    exit_code = 2


class ExtensionRequired(SwanKinkError):
    """A computation needs a larger working field.

    ``e_mult`` and ``f_mult`` are the smallest suggested multipliers for the
    ramification index and residue degree.  ``roots`` carries partial results
    (the roots already found by ``find_roots``).
    """

    exit_code = 3

    def __init__(self, message, e_mult=1, f_mult=1, roots=None):
        super().__init__(message)
        self.e_mult = int(e_mult)
        self.f_mult = int(f_mult)
        self.roots = list(roots or [])


class ExtensionCapExceeded(ExtensionRequired):
    pass


class PrecisionLoss(SwanKinkError):
    exit_code = 4


class TailUnbounded(PrecisionLoss):
    pass


class Inconclusive(SwanKinkError):
    exit_code = 5


class NoConvergence(Inconclusive):
    pass


class InternalInconsistency(SwanKinkError):
    exit_code = 6


class NonUnit(SwanKinkError):
    exit_code = 6


class NotAPthPower(SwanKinkError):
    exit_code = 6


class UnsupportedSlope(SwanKinkError):
    exit_code = 5


class GridTooCoarse(Inconclusive):
    pass


class ConnectednessNotEstablished(SwanKinkError):
    exit_code = 5


class DomainMismatch(SwanKinkError):
    exit_code = 2


class SeriesMismatch(SwanKinkError):
    exit_code = 2


class AssumptionViolation(SwanKinkError):
    exit_code = 2


class NotADiskBelow(SwanKinkError):
    exit_code = 5


class WitnessInvalid(SwanKinkError):
    exit_code = 5


class TheoremViolated(InternalInconsistency):
    pass


class InseparabilityUnverified(SwanKinkError):
    exit_code = 5
