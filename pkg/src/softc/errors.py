"""Error hierarchy shared across the compiler.

Every error carries a machine-readable ``code`` so the CLI and the HTTP
service can report failures uniformly.
"""


class SoftcError(Exception):
    """Base class for all user-facing errors."""

    code = "Error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


# --- truth table ---------------------------------------------------------

class TableError(SoftcError):
    code = "TableError"


class TableFormat(TableError):
    code = "TableFormat"


class MissingRow(TableError):
    code = "MissingRow"


class DuplicateRow(TableError):
    code = "DuplicateRow"


class BadSymbol(TableError):
    code = "BadSymbol"


class BadName(TableError):
    code = "BadName"


class TooManyInputs(TableError):
    code = "TooManyInputs"


class UnknownOutput(TableError):
    code = "UnknownOutput"


# --- expressions ----------------------------------------------------------

class ExpressionSyntaxError(SoftcError):
    """Malformed expression text; ``offset`` is the byte position."""

    code = "SyntaxError"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnboundVariable(SoftcError):
    code = "UnboundVariable"


class TooManyVariables(SoftcError):
    code = "TooManyVariables"


# --- netlist / families ---------------------------------------------------

class UnknownFamily(SoftcError):
    code = "UnknownFamily"


class BadNetlist(SoftcError):
    code = "BadNetlist"


class UnsupportedGate(SoftcError):
    code = "UnsupportedGate"


class FamilyMismatch(SoftcError):
    code = "FamilyMismatch"


# --- layout ---------------------------------------------------------------

class WindowTooSmall(SoftcError):
    code = "WindowTooSmall"


# --- simulation -----------------------------------------------------------

class UnboundInput(SoftcError):
    code = "UnboundInput"


class InputMismatch(SoftcError):
    code = "InputMismatch"


# --- pipeline -------------------------------------------------------------

class InternalVerificationFailure(SoftcError):
    """The compiled netlist disagreed with its source table: a compiler bug."""

    code = "InternalVerificationFailure"
