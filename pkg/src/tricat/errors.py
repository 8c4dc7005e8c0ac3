"""Exception types shared across the package."""


class TricatError(Exception):
    """Base class for all errors raised by this package."""


class SpaceError(TricatError):
    """Malformed finite space or an operation applied to invalid input."""


class ModelError(TricatError):
    """Malformed support/tensor model or inconsistent model data."""


class RingError(TricatError):
    """Ring mismatch, characteristic obstruction, or bad polynomial data."""


class CertificateError(TricatError):
    """Malformed ring-isomorphism certificate."""


class ParseError(TricatError):
    """Syntax or reference error in an input file, with a location."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", col {col}" if col is not None else "")
            loc = f" ({loc})"
        super().__init__(f"{message}{loc}")
