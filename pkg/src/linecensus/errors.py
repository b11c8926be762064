"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: input/usage problems exit 1,
failed assertions or audit verdicts exit 2.
"""


class LineCensusError(Exception):
    """Base class for all library errors."""


class StructureError(LineCensusError):
    """Operands structurally incompatible (field or variable-count mismatch)."""


class DegenerateInputError(LineCensusError):
    """Input degenerate for the requested operation (equal points, zero form, ...)."""


class NotOnSurfaceError(LineCensusError):
    """A point or line required to lie on the surface does not."""


class SingularPointError(LineCensusError):
    """The surface is singular at the given point (gradient vanishes)."""


class UnsupportedCharacteristicError(LineCensusError):
    """Field characteristic p violates the p = 0 or p > d requirement."""

    def __init__(self, p, d):
        super().__init__(f"characteristic {p} not allowed for degree {d} (need p = 0 or p > d)")
        self.p = p
        self.d = d


class UnsupportedFieldError(LineCensusError):
    """Operation requires a different field kind (e.g. a finite field)."""


class FieldExtensionRequired(LineCensusError):
    """The base field lacks a required root; names the minimal extension."""

    def __init__(self, message, extension_degree=None):
        super().__init__(message)
        self.extension_degree = extension_degree


class PreconditionError(LineCensusError):
    """A stated precondition failed; the message names which one."""


class TruncationCapExceeded(LineCensusError):
    """Series order still indeterminate at the hard truncation cap."""


class InconsistencyError(LineCensusError):
    """Data contradicts a structural guarantee (signals invalid input or a bug)."""


class IncompleteInputError(LineCensusError):
    """An operation received a census with missing classification/multiplicity data."""


class ParseError(LineCensusError):
    """Syntax error in a surface/field/element text form, with position info."""

    def __init__(self, message, line=None, col=None):
        pos = "" if line is None else f" at line {line}, col {col}"
        super().__init__(message + pos)
        self.line = line
        self.col = col
