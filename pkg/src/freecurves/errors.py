"""Exception hierarchy.

``Refusal`` subclasses signal a violated precondition (CLI exit code 1);
``ConsistencyError`` signals two independent computations disagreeing
(CLI exit code 2).
"""


class FreeCurvesError(Exception):
    pass


class Refusal(FreeCurvesError):
    """A precondition of an operation does not hold."""


class ConsistencyError(FreeCurvesError):
    """Two independent decision paths disagree; indicates a bug."""

    def __init__(self, message, detail=None):
        self.detail = detail
        super().__init__(message)


class FieldMismatch(Refusal, TypeError):
    pass


class DivisionByZero(Refusal, ZeroDivisionError):
    pass


class NonHomogeneousInput(Refusal, ValueError):
    pass


class NotReduced(Refusal):
    pass


class NotTangent(Refusal):
    pass


class TangencyViolated(Refusal):
    pass


class DegreeMismatch(Refusal):
    pass


class CharacteristicDividesDegree(Refusal):
    pass


class EigenschemeNotFinite(Refusal):
    pass


class DegreeTooSmall(Refusal):
    pass


class InconclusiveProfile(Refusal):
    pass


class PositiveDimensional(Refusal):
    pass


class ChartUnavailable(Refusal):
    pass


class DuplicateMember(Refusal):
    pass


class CommonFactor(Refusal):
    pass


class NotAMemberProduct(Refusal):
    pass


class InfiniteZ(Refusal):
    def __init__(self, message, remark=None):
        self.remark = remark
        super().__init__(message)


class PreconditionFailed(Refusal):
    pass


class MemberSingularOutsideB(Refusal):
    pass


class CertificateInvalid(Refusal):
    pass


class ParseError(Refusal):
    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        where = f" at position {position}" if position is not None else ""
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{where}{exp}")


class UnknownVariable(ParseError):
    pass
