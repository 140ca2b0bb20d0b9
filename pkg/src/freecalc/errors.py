"""Exception hierarchy shared by every module."""


class FreeCalcError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class AlphabetError(FreeCalcError, ValueError):
    """Generator out of range, unknown name, or mismatched alphabets."""


class ParseError(FreeCalcError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class ArityError(FreeCalcError, ValueError):
    pass


class DescriptorError(FreeCalcError, ValueError):
    """Unknown or unsupported variety / quotient descriptor."""


class BudgetExceeded(FreeCalcError, RuntimeError):
    """A computation outgrew the configured resource budget (CLI exit code 3)."""


class EndomorphismError(FreeCalcError, ValueError):
    """Malformed endomorphism data, or an operation needing an invertibility certificate."""
