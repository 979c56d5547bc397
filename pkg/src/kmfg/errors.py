"""Exception types shared across the package."""


class KmfgError(Exception):
    """Base class for all errors raised by this package."""


class MatrixFormatError(KmfgError):
    """Malformed matrix input; carries the offending position when known."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class InvariantViolationError(KmfgError):
    """A square integer matrix that fails a generalized-Cartan-matrix invariant.

    ``invariant`` is one of ``"diagonal"``, ``"sign"``, ``"zero-symmetry"``;
    ``entry`` is the offending (row, column) pair, 1-based for reporting.
    """

    def __init__(self, invariant, entry, message):
        super().__init__(message)
        self.invariant = invariant
        self.entry = entry


class UnknownNameError(KmfgError):
    """A diagram name outside the supported grammar or rank range."""


class HypothesisError(KmfgError):
    """Input refused because a validity hypothesis of the closed forms fails.

    ``reason`` is ``"reducible"`` or ``"hypotheses"`` (neither symmetrizable
    nor two-spherical).
    """

    def __init__(self, message, reason):
        super().__init__(message)
        self.reason = reason


class ResourceLimitError(KmfgError):
    """An enumeration exceeded its configured element cap."""

    def __init__(self, message, limit):
        super().__init__(message)
        self.limit = limit


class InadmissibleKappaError(KmfgError):
    """A colouring that violates an admissibility constraint."""
