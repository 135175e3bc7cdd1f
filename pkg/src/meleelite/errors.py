"""Exception taxonomy shared across the package."""


class MeleeLiteError(Exception):
    """Base class for all package errors."""


class ConfigError(MeleeLiteError, ValueError):
    """Invalid configuration: unknown character, bad layer sizes, bad hyperparameter."""


class InputError(MeleeLiteError, ValueError):
    """Invalid runtime input: out-of-range action, dimension mismatch, stale trace."""


class ProtocolError(MeleeLiteError):
    """Wire-format violation: bad CRC, truncated frame, unknown schema version."""


class SnapshotCorrupt(ProtocolError):
    """Snapshot file failed its magic or CRC check."""


class SnapshotNotFound(MeleeLiteError):
    """Requested snapshot version does not exist."""


class NumericalError(MeleeLiteError, ArithmeticError):
    """Non-finite value where finite math was required."""


class NotReady(MeleeLiteError):
    """Resource has no data yet (empty queue, empty snapshot store)."""
