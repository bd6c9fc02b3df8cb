"""
Exception hierarchy for the coexistence engine
"""


class CoexistenceError(ValueError):
    """Base class for every engine error"""


class UnitMismatchError(CoexistenceError):
    """Raised when quantities with different references are combined"""


class DegenerateAggregationError(CoexistenceError):
    """Raised when a power sum is requested over no terms"""


class UndefinedLogarithmError(CoexistenceError):
    """Raised when a path loss would need log10 of zero"""


class DegenerateClutterError(CoexistenceError):
    """Raised when a clutter category has zero nominal height"""


class InfeasibleScenarioError(CoexistenceError):
    """Raised when no finite separation distance satisfies the limit"""


class UnknownFigureError(CoexistenceError):
    """Raised for a figure id without a preset"""


class ScenarioValidationError(CoexistenceError):
    """Raised when a scenario file fails to parse or validate

    Each entry of ``problems`` is a human readable message that names the
    field path and, when known, the line in the source file.
    """

    def __init__(self, problems: list[str], source: str | None = None):
        self.problems = problems
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(where + "; ".join(problems))
