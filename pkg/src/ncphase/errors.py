"""Exception hierarchy.

Every error raised on purpose by the package derives from `NCPhaseError`.
Input-validation errors also derive from `ValueError` so callers that only
know the builtin hierarchy still catch them.
"""


class NCPhaseError(Exception):
    pass


class InvalidParameters(NCPhaseError, ValueError):
    pass


class InvalidDimension(NCPhaseError, ValueError):
    pass


class UnsupportedDimension(InvalidDimension):
    pass


class SingularForm(NCPhaseError, ValueError):
    pass


class DegenerateRatio(NCPhaseError, ValueError):
    pass


class IncompatibleACS(NCPhaseError, ValueError):
    pass


class ZeroMass(NCPhaseError, ValueError):
    pass


class UndefinedVelocity(NCPhaseError, ArithmeticError):
    pass


class NegativeDiscriminant(NCPhaseError, ArithmeticError):
    pass


class SuperluminalBoost(NCPhaseError, ValueError):
    pass


class NegativeRadicand(NCPhaseError, ArithmeticError):
    pass


class QuadratureFailure(NCPhaseError, ArithmeticError):
    pass


class ParseError(NCPhaseError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(NCPhaseError, ValueError):
    def __init__(self, field, message="", line=None):
        self.field = field
        self.detail = message
        self.line = line
        text = f"invalid field {field!r}"
        if message:
            text += f": {message}"
        if line is not None:
            text = f"line {line}: {text}"
        super().__init__(text)


class DuplicateName(ValidationError):
    def __init__(self, name, line=None):
        self.name = name
        super().__init__("name", f"duplicate burst name {name!r}", line=line)
