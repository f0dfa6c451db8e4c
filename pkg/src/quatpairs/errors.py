"""Error types shared across the package.

Every mathematical rejection is a subclass of AlgebraError and carries a
stable machine-readable code; the CLI maps these to exit status 2.
Malformed input (bad JSON, schema violations) is raised as InputError and
maps to exit status 1.
"""


class AlgebraError(Exception):
    code = "algebra_error"

    def __init__(self, message, offending_path=None):
        super().__init__(message)
        self.offending_path = offending_path


class NonMonic(AlgebraError):
    code = "NonMonic"


class InseparableModulus(AlgebraError):
    code = "InseparableModulus"


class ReducibleModulus(AlgebraError):
    code = "ReducibleModulus"


class NotAUnit(AlgebraError):
    code = "NotAUnit"


class NoSquareRoot(AlgebraError):
    code = "NoSquareRoot"


class DescentFailure(AlgebraError):
    code = "DescentFailure"


class NotAlternating(AlgebraError):
    code = "NotAlternating"


class SizeMismatch(AlgebraError):
    code = "SizeMismatch"


class NotSemistable(AlgebraError):
    code = "NotSemistable"


class NonUnitParameter(AlgebraError):
    code = "NonUnitParameter"


class ConjugatesUnavailable(AlgebraError):
    code = "ConjugatesUnavailable"


class NotInKGroup(AlgebraError):
    code = "NotInKGroup"


class NotInSubgroup(AlgebraError):
    code = "NotInSubgroup"


class NotInW(AlgebraError):
    code = "NotInW"


class NotLevelV1(AlgebraError):
    code = "NotLevelV1"


class NotLevelV2(AlgebraError):
    code = "NotLevelV2"


class KernelUnitSearchFailed(AlgebraError):
    code = "KernelUnitSearchFailed"


class ResourceLimit(AlgebraError):
    code = "ResourceLimit"


class NotDefinite(AlgebraError):
    code = "NotDefinite"


class InputError(Exception):
    """Malformed request: bad JSON, wrong shape, schema violation."""

    code = "InputError"

    def __init__(self, message, offending_path=None):
        super().__init__(message)
        self.offending_path = offending_path
