"""Exception hierarchy for the symbol calculus."""

from __future__ import annotations


class PdosymError(Exception):
    """Base class for all calculus errors."""


class DimensionMismatch(PdosymError):
    pass


class IncompatibleOrders(PdosymError):
    """Orders do not differ by an integer (layers cannot align)."""


class NonIntegrableCross(PdosymError):
    """A cross product leaves the exactly integrable term classes."""


class SingularPoint(PdosymError):
    """Evaluation requested at a point where the symbol is singular."""


class NonzeroMean(PdosymError):
    """Sphere Laplacian inversion requested for a source with nonzero mean."""


class PoleAtS(PdosymError):
    """Radial moment exists only outside the exact value ring (or diverges)."""


class ResidueObstruction(PdosymError):
    """Derivative decomposition blocked by a nonzero residue."""


class ClassViolation(PdosymError):
    """Input is not in the symbol class required for the operation.

    Carries an optional ``report`` with the offending data (e.g. a nonzero
    defect exhibited for an out-of-class symbol).
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ZeroDirection(PdosymError):
    """Holomorphic family requested with a constant order (beta = 0)."""


class SignCalibrationFailure(PdosymError):
    """Numeric quantization check matched neither sign convention."""


class NonIntegrableCoefficient(PdosymError):
    """Coefficient function has no finite full-space integral."""


class AccuracyNotReached(PdosymError):
    pass


class IllConditionedFit(PdosymError):
    pass


class DivergentMoment(PdosymError):
    """A radial moment with no finite sharp-cutoff limit was evaluated."""


class DocumentError(PdosymError):
    """Base for symbol-document problems; carries line/column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self) -> str:  # pragma: no cover - formatting only
        base = super().__str__()
        if self.line:
            return f"{self.line}:{self.column}: {base}"
        return base


class DocumentSyntaxError(DocumentError):
    pass


class UnresolvedReference(DocumentError):
    pass


class InvariantViolation(DocumentError):
    pass
