"""Exception types shared across the package."""


class SubtileError(Exception):
    """Base class for all package errors."""


class GraphFormatError(SubtileError):
    """Malformed graph text. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ConstructionError(SubtileError):
    """Bad construction expression (grammar or range violation)."""


class EmptyPattern(SubtileError):
    """Pattern graph has no edges; every threshold parameter is undefined."""


class PatternTooLarge(SubtileError):
    """Pattern exceeds the 2^v subset-enumeration bound (v <= 24)."""


class NotBipartiteError(SubtileError):
    """Operation requires a bipartite input graph."""


class InfiniteHcf(SubtileError):
    """Every canonical split has imbalance 0; no imbalance witness exists."""


class SearchBudgetExceeded(SubtileError):
    """An exact search ran out of its node budget. Distinct from a negative
    answer: the property is left undecided."""


class HostTooLarge(SubtileError):
    """Host graph exceeds the bitmask width bound of the tiling solver."""


class PreconditionViolated(SubtileError):
    """A named hypothesis of the requested construction fails."""
