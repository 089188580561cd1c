"""Exception types shared by every module."""


class IsolatError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomial(IsolatError):
    pass


class ZeroConstantTerm(IsolatError):
    pass


class NotPrime(IsolatError):
    pass


class NotOddPrime(NotPrime):
    pass


class ModulusMismatch(IsolatError):
    pass


class BadInput(IsolatError):
    pass


class NotSymmetric(IsolatError):
    pass


class BoundaryRoot(IsolatError):
    """The trace polynomial vanishes at 2 or -2, i.e. X -/+ 1 divides twice."""


class ValidationError(IsolatError):
    pass


class ResultantZero(IsolatError):
    pass


class UnresolvedCofactor(IsolatError):
    def __init__(self, cofactor: int, pair: tuple[int, int] | None = None):
        self.cofactor = cofactor
        self.pair = pair
        where = f" for factors {pair}" if pair else ""
        super().__init__(f"could not factor resultant cofactor {cofactor}{where}")


class DomainMismatch(IsolatError):
    pass


class Infeasible(IsolatError):
    pass


class RamifiedCyclotomic(IsolatError):
    pass


class InternalInconsistency(IsolatError):
    pass


class BadSpec(IsolatError):
    pass


class NotSquareFree(IsolatError):
    pass


class NotUnramified(IsolatError):
    pass


class ParseError(IsolatError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at byte {offset}")
