"""
Error types for mubgeo
Every user-facing failure is a MubGeoError; the CLI maps them to exit code 2
"""


class MubGeoError(ValueError):
    """Base class for invalid input or unavailable constructions"""


# Finite fields

class NonPrimeCharacteristic(MubGeoError):
    """Characteristic p is not a prime"""


class OrderTooLarge(MubGeoError):
    """Requested order exceeds the configured cap"""


class IndexOutOfRange(MubGeoError, IndexError):
    """Element, point or pencil index outside its valid range"""


class DivisionByZero(MubGeoError, ZeroDivisionError):
    """Inverse of the zero element requested"""


class OrderNotPrimePower(MubGeoError):
    """Dimension is not a prime power, so no field-based construction exists"""


# Latin squares

class MalformedArray(MubGeoError):
    """Ragged array or symbols outside 0..n-1"""


class OrderMismatch(MubGeoError):
    """Two squares of different order were compared"""


class WrongCount(MubGeoError):
    """Wrong number of squares in a MOLS family"""


class NotOrthogonal(MubGeoError):
    """Two squares of a MOLS family are not orthogonal"""


# Affine planes

class MalformedIncidence(MubGeoError):
    """Incidence lists are not well formed"""


class SamePencil(MubGeoError):
    """Row and column pencil coincide"""


class InvalidPlane(MubGeoError):
    """Structure fails the affine plane axioms"""


# Hermitian operator space

class DimensionMismatch(MubGeoError):
    """Operators of different dimension were combined"""


class NotUnitTrace(MubGeoError):
    """Operator does not have unit trace"""


class NotHermitian(MubGeoError):
    """Matrix is not Hermitian within tolerance"""


# MUBs

class DegenerateCombination(MubGeoError):
    """No non-degenerate Hermitian combination found within the retry budget"""


class TooManyBases(MubGeoError):
    """More than n+1 bases supplied"""


class NonUnitVector(MubGeoError):
    """A basis vector is not normalized"""


class InvalidMubSet(MubGeoError):
    """Bases fail the unbiasedness check"""


class EvenCharacteristic(MubGeoError):
    """Quadratic character formula needs an odd characteristic"""


class CommutationFailure(RuntimeError):
    """Operators of one Weyl class failed to commute (implementation bug)"""


# Polytope and D-simplex

class IncompleteChoice(MubGeoError):
    """Choice map does not select one corner per B-simplex"""


class PlaneOrderMismatch(MubGeoError):
    """Plane order differs from the polytope dimension"""


class UnknownLine(MubGeoError):
    """Line index not present in the plane"""


class GramMismatch(MubGeoError):
    """Point-face operators of a D-simplex are not mutually orthogonal"""


class AbstractRealization(MubGeoError):
    """Operation needs quantum corners but the polytope is abstract"""


# Wigner function

class MissingPlane(MubGeoError):
    """Wigner table carries no D-simplex / plane"""


class NotPositive(UserWarning):
    """Input state has a negative eigenvalue; linear maps still apply"""
