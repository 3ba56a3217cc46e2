"""Exception types shared across the package."""


class SieveCapError(ValueError):
    """Requested range exceeds the configured sieve cap."""


class PoleError(ZeroDivisionError):
    """Evaluation requested at a pole (zeta or a principal L-function at s=1)."""


class InsufficientOrderError(ValueError):
    """Euler-Maclaurin order too small for the requested continuation domain."""


class ParityError(ValueError):
    """Special-value index has the wrong parity for the character."""


class NonPrimitiveError(ValueError):
    """Operation requires a primitive (and non-principal) character."""

class NonCoprimeResidueError(ValueError):
    """Residue class is not coprime to the modulus."""


class ZeroBankFormatError(ValueError):
    """Zero-bank file failed to parse or validate; carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnresolvedIntervalError(RuntimeError):
    """Zero search could not reconcile a block after the densest rescan."""

    def __init__(self, message: str, blocks=None):
        super().__init__(message)
        self.blocks = blocks or []
