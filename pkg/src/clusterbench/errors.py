"""Exception types shared across the package.

Each error carries a short ``code`` used by the CLI when reporting failures.
"""


class ClusterBenchError(Exception):
    code = "ERROR"


class ConfigError(ClusterBenchError):
    """Invalid or unreadable scenario configuration."""

    code = "CONFIG"


class InputError(ClusterBenchError):
    """Malformed or unusable input data (node lists, tables, prefixes)."""

    code = "INPUT"


class ConsistencyError(ClusterBenchError):
    """Cross-structure mismatch, e.g. a cluster member missing from a snapshot."""

    code = "CONSISTENCY"


class CapacityError(ClusterBenchError):
    """A value overflows its address field."""

    code = "CAPACITY"


class InvariantViolation(ClusterBenchError):
    """A domain invariant does not hold (overlapping clusters, bad head, ...)."""

    code = "INVARIANT"


class UndefinedIndexError(ClusterBenchError):
    """The validity index is undefined: fewer than two clusters."""

    code = "UNDEFINED_INDEX"


class DegenerateGeometryError(ClusterBenchError):
    """0/0 geometry: zero inter-cluster distance and all-zero diameters."""

    code = "DEGENERATE_GEOMETRY"
