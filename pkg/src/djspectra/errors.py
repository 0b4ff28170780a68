"""Exception hierarchy.

Every error carries the process exit code the command-line front end
reports for it.
"""


class SpectraError(Exception):
    exit_code = 3


class SizeError(SpectraError, ValueError):
    pass


class NoEdgesError(SpectraError, ValueError):
    pass


class EmptyListError(SpectraError, ValueError):
    pass


class DisconnectedError(SpectraError, ValueError):
    pass


class PreconditionError(SpectraError, ValueError):
    pass


class AlignmentError(PreconditionError):
    pass


class LengthMismatchError(SpectraError, ValueError):
    pass


class FamilySizeError(LengthMismatchError):
    pass


class ParseError(SpectraError, ValueError):
    exit_code = 2

    def __init__(self, message, offset=0, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        detail = f"{message} at byte {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class TemplateMismatch(SpectraError):
    exit_code = 4


class VerificationError(SpectraError):
    exit_code = 5


class ConvergenceError(SpectraError, ArithmeticError):
    exit_code = 6


class ComplexRootError(SpectraError, ArithmeticError):
    exit_code = 6
