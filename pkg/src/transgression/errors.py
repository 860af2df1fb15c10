class TransgressionError(Exception):
    pass


class ParseError(TransgressionError):
    pass


class ValidationError(TransgressionError):
    def __init__(self, identity, witness, detail=""):
        self.identity = identity
        self.witness = witness
        msg = f"{identity} violated at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SingularForm(TransgressionError):
    pass


class NotDiagonal(TransgressionError):
    pass


class InvalidDescriptor(TransgressionError):
    pass


class FlavorMismatch(TransgressionError):
    pass


class CertificateFailure(TransgressionError):
    pass


class NotAcyclicFlavor(TransgressionError):
    pass


class NotACoboundary(TransgressionError):
    pass


class NotCentral(TransgressionError):
    pass


class NotACocycle(TransgressionError):
    pass


class ClassNotResolved(TransgressionError):
    pass


class RankNotReached(TransgressionError):
    pass


class CenterSolveFailed(TransgressionError):
    pass


class NonCentralGenerator(TransgressionError):
    pass


class MismatchReport(TransgressionError):
    pass


class VerdictFail(TransgressionError):
    pass


class DimensionMismatch(TransgressionError):
    pass
