class SymQuivError(Exception):
    exit_code = 1


class MalformedInputError(SymQuivError):
    exit_code = 1


class DomainMismatchError(MalformedInputError):
    pass


class PreconditionError(SymQuivError):
    exit_code = 2


class NotTameError(PreconditionError):
    pass


class InvalidParametersError(PreconditionError):
    pass


class ClassificationError(PreconditionError):
    pass


class NotSinkOrSourceError(PreconditionError):
    pass


class InadmissibleVertexError(PreconditionError):
    pass


class NonCanonicalError(PreconditionError):
    pass


class NotRegularError(PreconditionError):
    pass


class ParityError(PreconditionError):
    pass


class NonSquareError(PreconditionError):
    pass


class SkewSymmetryError(PreconditionError):
    pass


class UnsupportedTypeError(PreconditionError):
    pass


class NestingError(PreconditionError):
    pass


class BudgetExceededError(PreconditionError):
    pass


class KacDegeneracyError(PreconditionError):
    def __init__(self, message, variable="y"):
        super().__init__(message)
        self.variable = variable


class VerificationError(SymQuivError):
    exit_code = 3


class SearchExhaustedError(VerificationError):
    def __init__(self, message, explored=0):
        super().__init__(message)
        self.explored = explored


class InternalInconsistencyError(VerificationError):
    pass
