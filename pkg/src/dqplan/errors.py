"""Exception hierarchy for the planning toolkit."""


class DqplanError(Exception):
    """Base class for all toolkit errors."""


class NearZeroNormError(DqplanError):
    """Raised when a quaternion with (near-)zero norm cannot be normalized."""


class NonUnitRotationError(DqplanError):
    """Raised when a rotation quaternion deviates too far from unit norm."""


class NonUnitDualQuaternionError(DqplanError):
    """Raised when a dual quaternion violates the unit constraints."""


class InvalidBoundsError(DqplanError):
    """Raised when workspace bounds are inverted or otherwise unusable."""


class InvalidScenarioError(DqplanError):
    """Raised when a scenario's start or goal violates bounds or clearance."""


class GenerationFailedError(DqplanError):
    """Raised when random obstacle placement exhausts its attempt budget."""


class EmptyTreeError(DqplanError):
    """Raised when a tree query is made against an empty tree."""


class BrokenParentChainError(DqplanError):
    """Raised when a node's parent chain does not reach the tree root."""


class EmptyPathError(DqplanError):
    """Raised when a path with fewer than two poses is validated."""


class NoPathFoundError(DqplanError):
    """Raised when the planner exhausts its iteration budget without a solution."""


class ParseError(DqplanError):
    """Raised on malformed scenario or path files; message names the offending field."""


class SchemaVersionMismatchError(DqplanError):
    """Raised when a file declares an unsupported schema version."""
