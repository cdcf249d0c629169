"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the CLI.
"""


class CGLError(Exception):
    code = "error"


class DivisionByZero(CGLError, ZeroDivisionError):
    code = "division_by_zero"


class PresentationSyntaxError(CGLError):
    """Malformed presentation document; ``line``/``column`` are 1-based."""

    code = "syntax_error"

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(CGLError):
    code = "schema_error"


class InvariantViolation(CGLError):
    code = "invariant_violation"


class UnknownName(CGLError):
    code = "unknown_name"


class ZeroElement(CGLError):
    code = "zero_element"


class UndefinedInverseRewrite(CGLError):
    code = "undefined_inverse_rewrite"


class BoundExceeded(CGLError):
    code = "bound_exceeded"


class NotSymmetric(CGLError):
    code = "not_symmetric"


class NotCGL(CGLError):
    code = "not_cgl"


class MultipleNonzeroDelta(CGLError):
    code = "multiple_nonzero_delta"


class NotHomogeneous(CGLError):
    code = "not_homogeneous"


class NonUnitInversion(CGLError):
    code = "non_unit_inversion"


class EnumerationCapExceeded(CGLError):
    code = "enumeration_cap_exceeded"
