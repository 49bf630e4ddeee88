"""Exception hierarchy with stable machine-readable codes."""


class TowerError(Exception):
    """Base class for every error raised by loctower.

    Each subclass carries a stable string ``code`` that the command-line
    front end reports verbatim, and a ``context`` dict with details.
    """

    code = "TOWER_ERROR"

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        return {"code": self.code, "message": self.message, "context": self.context}


class InvalidChain(TowerError):
    code = "INVALID_CHAIN"


class DimensionMismatch(TowerError):
    code = "DIMENSION_MISMATCH"


class CoherenceViolation(TowerError):
    code = "COHERENCE_VIOLATION"


class NonFiniteEntry(TowerError):
    code = "NON_FINITE_ENTRY"


class LevelOutOfRange(TowerError):
    code = "LEVEL_OUT_OF_RANGE"


class ChainMismatch(TowerError):
    code = "CHAIN_MISMATCH"


class NotNormal(TowerError):
    code = "NOT_NORMAL"


class TableCoverageGap(TowerError):
    code = "TABLE_COVERAGE_GAP"


class EigensolverFailure(TowerError):
    code = "EIGENSOLVER_FAILURE"


class UnknownCharacter(TowerError):
    code = "UNKNOWN_CHARACTER"


class OutOfDomain(TowerError):
    code = "OUT_OF_DOMAIN"


class InvalidFunctionSpec(TowerError):
    code = "INVALID_FUNCTION_SPEC"


class ParseError(TowerError):
    code = "PARSE_ERROR"


class InternalError(TowerError):
    # a property guaranteed by construction failed numerically
    code = "INTERNAL_ERROR"
