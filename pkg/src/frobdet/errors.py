"""Domain errors raised by the library.

Every error carries a message naming the offending data; the CLI maps any
FrobdetError to exit code 1.
"""


class FrobdetError(Exception):
    pass


# table construction and IO

class AssociativityViolation(FrobdetError):
    def __init__(self, s, t, u, msg=None):
        self.triple = (s, t, u)
        super().__init__(msg or f"associativity fails at ({s}, {t}, {u})")


class IndexOutOfRange(FrobdetError):
    pass


class DuplicateName(FrobdetError):
    pass


class DeclaredZeroNotZero(FrobdetError):
    pass


class DeclaredIdentityNotIdentity(FrobdetError):
    pass


class NotIdempotent(FrobdetError):
    pass


class SizeOverflow(FrobdetError):
    pass


class UnknownFamily(FrobdetError):
    pass


class ParamOutOfRange(FrobdetError):
    pass


class SizeTooLarge(FrobdetError):
    pass


class FormatError(FrobdetError):
    """Malformed .sgp or cocycle text."""


# exact algebra

class OutOfRange(FrobdetError):
    pass


class DimensionCap(FrobdetError):
    pass


class MissingVariable(FrobdetError):
    pass


class VariableMismatch(FrobdetError):
    pass


class NotUnitriangular(FrobdetError):
    pass


class NotAGroup(FrobdetError):
    pass


class NotAbelian(FrobdetError):
    pass


class ExactDivisionError(FrobdetError):
    """Polynomial division left a remainder where exactness was required."""


class ParseError(FrobdetError):
    pass


# order and Moebius

class ModeHypothesisFailed(FrobdetError):
    pass


class NotSemilattice(FrobdetError):
    pass


class NotAPartialOrder(FrobdetError):
    pass


# determinant engine

class NoZero(FrobdetError):
    pass


class CocycleDomainMismatch(FrobdetError):
    pass


class SingularP(FrobdetError):
    pass


class RepDimensionMismatch(FrobdetError):
    pass


class NotMultiplicative(FrobdetError):
    pass


class NotAbelianWithoutReps(FrobdetError):
    pass


class VerificationFailed(FrobdetError):
    pass


# inverse semigroups and groupoids

class NotInverse(FrobdetError):
    pass


class NotClifford(FrobdetError):
    pass


class NonabelianWithoutReps(FrobdetError):
    pass


# nilpotent-adjoined monoids

class NotNilpotentAdjoined(FrobdetError):
    pass


class NoUniqueAnnihilator(FrobdetError):
    pass


class CocycleInvalid(FrobdetError):
    pass


# commutative pipeline

class NotIdempotentSemigroup(FrobdetError):
    pass


class IdempotentsNotCentral(FrobdetError):
    pass


class NotLocalShape(FrobdetError):
    pass


class NotCommutative(FrobdetError):
    pass


class NotChain(FrobdetError):
    pass
