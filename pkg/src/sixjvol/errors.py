"""Exception hierarchy.

Two families matter to callers (and to the CLI exit codes): bad input
(:class:`ValidationError`) and numeric trouble on otherwise well-formed
input (:class:`DomainError`).
"""


class SixjvolError(Exception):
    code = "error"


class ValidationError(SixjvolError, ValueError):
    code = "validation"


class DomainError(SixjvolError, ArithmeticError):
    code = "domain"


class AdmissibilityError(ValidationError):
    code = "not-admissible"


class ClassificationError(ValidationError):
    code = "not-hyperbolic"


class LinkFormatError(ValidationError):
    code = "link-format"


class NTooSmallError(ValidationError):
    code = "n-too-small"


class TableRangeError(DomainError, IndexError):
    code = "table-range"


class PhaseMismatchError(DomainError):
    code = "phase-mismatch"


class ParityError(DomainError):
    code = "parity"


class DegeneracyError(DomainError):
    code = "degenerate"


class TetraExistenceError(DomainError):
    code = "no-tetrahedron"


class DeformationRangeError(DomainError):
    code = "deformation-range"
