"""
Mutually Unbiased Bases
Complete sets of n+1 MUBs for n = p^k as joint eigenbases of commuting
Weyl-Heisenberg operator classes, plus the unbiasedness verifier
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import eigh

from errors import (
    CommutationFailure,
    DegenerateCombination,
    DimensionMismatch,
    EvenCharacteristic,
    InvalidMubSet,
    NonUnitVector,
    OrderNotPrimePower,
    OrderTooLarge,
    TooManyBases,
)
from gf import FieldTable, field_create, prime_power
from serialization import complex_from_json, complex_to_json

logger = logging.getLogger(__name__)

DEFAULT_MUB_ORDER_CAP = 16
DEFAULT_SEED = 2718
DEFAULT_MAX_RETRIES = 8
DEFAULT_TOLERANCE = 1e-10

# Smallest accepted spacing between eigenvalues of the random combination
EIGENVALUE_GAP = 1e-6

# |<v|v> - 1| above this is a malformed vector, not a numerical deviation
UNIT_NORM_TOL = 1e-6

COMMUTATOR_TOL = 1e-10


def character(field: FieldTable, y) -> np.ndarray:
    """chi(y) = exp(2 pi i tr(y) / p)"""
    return np.exp(2j * np.pi * field.trace_table[np.asarray(y)] / field.p)


def weyl_operator(field: FieldTable, a: int, b: int) -> np.ndarray:
    """X_a Z_b with X_a|x> = |x + a> and Z_b|x> = chi(b x)|x>"""
    n = field.order
    x = np.arange(n)
    matrix = np.zeros((n, n), dtype=np.complex128)
    matrix[field.add_table[a, x].astype(np.int64), x] = character(field, field.mul_table[b, x])
    return matrix


@dataclass(frozen=True, eq=False)
class WeylOperatorClass:
    """
    The n-1 operators X_a Z_b whose labels (a, b) lie on one line through the
    origin of GF(n)^2

    Members are ordered by the scalar lambda in (a, b) = lambda * generator.
    """

    n: int
    generator: Tuple[int, int]
    labels: Tuple[Tuple[int, int], ...]
    operators: np.ndarray

    def max_commutator(self) -> float:
        worst = 0.0
        ops = self.operators
        for i in range(len(ops)):
            for j in range(i + 1, len(ops)):
                worst = max(worst, float(np.abs(ops[i] @ ops[j] - ops[j] @ ops[i]).max()))
        return worst


def weyl_partition(field: FieldTable, max_order: int = DEFAULT_MUB_ORDER_CAP) -> List[WeylOperatorClass]:
    """
    Split the n^2 - 1 non-identity Weyl operators into n+1 commuting classes

    Class 0 is generated by (0, 1), the diagonal Z operators; class 1+m by
    (1, m) for m = 0..n-1.

    Args:
        field: GF(n)
        max_order: Largest n accepted

    Returns:
        List of n+1 WeylOperatorClass
    """
    n = field.order
    if n > max_order:
        raise OrderTooLarge(f"Weyl partition capped at order {max_order}, got {n}")

    generators = [(0, 1)] + [(1, m) for m in range(n)]
    classes = []
    covered = set()
    for a0, b0 in generators:
        labels = tuple(
            (int(field.mul_table[lam, a0]), int(field.mul_table[lam, b0])) for lam in range(1, n)
        )
        covered.update(labels)
        operators = np.array([weyl_operator(field, a, b) for a, b in labels])
        weyl_class = WeylOperatorClass(n, (a0, b0), labels, operators)

        worst = weyl_class.max_commutator()
        if worst > COMMUTATOR_TOL:
            raise CommutationFailure(f"Class {(a0, b0)} of order {n} has commutator norm {worst:.3e}")
        classes.append(weyl_class)

    if len(covered) != n * n - 1:
        raise CommutationFailure(f"Classes cover {len(covered)} labels, expected {n * n - 1}")

    logger.debug(f"Partitioned {n * n - 1} Weyl operators into {len(classes)} classes")
    return classes


def _canonical_phase(vector: np.ndarray) -> np.ndarray:
    magnitudes = np.abs(vector)
    pivot = int(np.flatnonzero(magnitudes >= magnitudes.max() - 1e-9)[0])
    return vector * (np.conj(vector[pivot]) / magnitudes[pivot])


def _eigenvalue_key(weyl_class: WeylOperatorClass, vector: np.ndarray, p: int) -> Tuple[int, ...]:
    # Eigenvalues are (4p)-th roots of unity; key them by their integer angle
    steps = 4 * p
    key = []
    for op in weyl_class.operators:
        value = np.vdot(vector, op @ vector)
        fraction = (np.angle(value) / (2 * np.pi)) % 1.0
        key.append(int(round(fraction * steps)) % steps)
    return tuple(key)


def joint_eigenbasis(weyl_class: WeylOperatorClass, p: int, seed: int, class_index: int = 0,
                     max_retries: int = DEFAULT_MAX_RETRIES) -> np.ndarray:
    """
    Common eigenbasis of a commuting class

    A random Hermitian combination sum_k (c_k U_k + conj(c_k) U_k^dagger) is
    diagonalized; attempt t draws its coefficients from the seed sequence
    [seed, class_index, t].

    Returns:
        (n, n) array with one eigenvector per row, sorted by eigenvalue key
        and phase-fixed
    """
    ops = weyl_class.operators
    n = weyl_class.n

    for attempt in range(max_retries):
        rng = np.random.default_rng([seed, class_index, attempt])
        coefficients = rng.normal(size=len(ops)) + 1j * rng.normal(size=len(ops))
        combination = np.einsum("k,kij->ij", coefficients, ops)
        combination = combination + combination.conj().T

        values, vectors = eigh(combination)
        gap = float(np.min(np.diff(values))) if n > 1 else np.inf
        if gap < EIGENVALUE_GAP:
            logger.debug(f"Class {weyl_class.generator}: eigenvalue gap {gap:.2e} on attempt {attempt}, retrying")
            continue

        basis = vectors.T
        for op in ops:
            images = basis @ op.T
            expected = np.einsum("ki,ki->k", basis.conj(), images)[:, None] * basis
            residual = float(np.abs(images - expected).max())
            if residual > COMMUTATOR_TOL:
                raise CommutationFailure(
                    f"Eigenvector of class {weyl_class.generator} is not an eigenvector of every member "
                    f"(residual {residual:.3e})")

        rows = sorted(range(n), key=lambda i: _eigenvalue_key(weyl_class, basis[i], p))
        return np.array([_canonical_phase(basis[i]) for i in rows])

    raise DegenerateCombination(
        f"No non-degenerate combination for class {weyl_class.generator} after {max_retries} attempts")


@dataclass(frozen=True, eq=False)
class MubSet:
    """
    Bases indexed [basis I, vector i, component]

    Metadata records how the set was produced (field modulus, seed).
    """

    n: int
    bases: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        bases = np.array(self.bases, dtype=np.complex128)
        if bases.ndim != 3 or bases.shape[1:] != (self.n, self.n):
            raise DimensionMismatch(f"Expected bases of shape (m, {self.n}, {self.n}), got {bases.shape}")
        bases.flags.writeable = False
        object.__setattr__(self, "bases", bases)

    @property
    def num_bases(self) -> int:
        return self.bases.shape[0]

    def vector(self, basis: int, index: int) -> np.ndarray:
        return self.bases[basis, index]

    def projector_matrices(self) -> np.ndarray:
        """|e_Ii><e_Ii| for all I, i as an (m, n, n, n) array"""
        return np.einsum("Iia,Iib->Iiab", self.bases, self.bases.conj())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "bases": [complex_to_json(basis) for basis in self.bases],
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MubSet":
        try:
            bases = np.array([complex_from_json(basis) for basis in data["bases"]])
            return cls(int(data["n"]), bases, dict(data.get("metadata", {})))
        except (KeyError, TypeError, ValueError) as e:
            raise DimensionMismatch(f"Invalid MUB data: {e}") from e


@dataclass(frozen=True)
class MubReport:
    n: int
    num_bases: int
    orthonormality_error: float
    unbiasedness_deviation: float
    worst_orthonormality: Optional[Tuple[int, int, int]]
    worst_pair: Optional[Tuple[int, int, int, int]]
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.orthonormality_error <= self.tolerance and self.unbiasedness_deviation <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "num_bases": self.num_bases,
            "orthonormality_error": self.orthonormality_error,
            "unbiasedness_deviation": self.unbiasedness_deviation,
            "worst_orthonormality": list(self.worst_orthonormality) if self.worst_orthonormality else None,
            "worst_pair": list(self.worst_pair) if self.worst_pair else None,
            "passed": self.passed,
        }


def mub_verify(bases, tolerance: float = DEFAULT_TOLERANCE) -> MubReport:
    """
    Exhaustive orthonormality and unbiasedness check

    Args:
        bases: MubSet or array of shape (m, n, n), vectors as rows
        tolerance: Largest accepted deviation

    Returns:
        MubReport with the worst deviations and their index tuples
    """
    array = bases.bases if isinstance(bases, MubSet) else np.asarray(bases, dtype=np.complex128)
    if array.ndim != 3 or array.shape[1] != array.shape[2]:
        raise DimensionMismatch(f"Expected bases of shape (m, n, n), got {array.shape}")

    m, n = array.shape[0], array.shape[1]
    if m > n + 1:
        raise TooManyBases(f"At most {n + 1} MUBs exist in dimension {n}, got {m}")

    norms = np.einsum("Iia,Iia->Ii", array.conj(), array).real
    bad = np.argwhere(np.abs(norms - 1.0) > UNIT_NORM_TOL)
    if len(bad):
        basis, index = (int(v) for v in bad[0])
        raise NonUnitVector(f"Vector {index} of basis {basis} has squared norm {norms[basis, index]:.6g}")

    overlaps = np.einsum("Iia,Jja->IiJj", array.conj(), array)

    within = np.array([overlaps[I, :, I, :] for I in range(m)])
    ortho_errors = np.abs(within - np.eye(n)[None, :, :])
    worst = np.unravel_index(int(np.argmax(ortho_errors)), ortho_errors.shape)
    ortho_error = float(ortho_errors[worst])

    deviation = np.abs(np.abs(overlaps) ** 2 - 1.0 / n)
    for I in range(m):
        deviation[I, :, I, :] = 0.0
    worst_cross = np.unravel_index(int(np.argmax(deviation)), deviation.shape) if m > 1 else None
    unbiased_dev = float(deviation[worst_cross]) if worst_cross is not None else 0.0

    report = MubReport(
        n=n,
        num_bases=m,
        orthonormality_error=ortho_error,
        unbiasedness_deviation=unbiased_dev,
        worst_orthonormality=tuple(int(v) for v in worst),
        worst_pair=tuple(int(v) for v in worst_cross) if worst_cross is not None else None,
        tolerance=tolerance,
    )
    logger.debug(f"MUB check n={n}, m={m}: ortho {ortho_error:.2e}, unbiased {unbiased_dev:.2e}")
    return report


def mub_construct(field: FieldTable, seed: int = DEFAULT_SEED, max_order: int = DEFAULT_MUB_ORDER_CAP,
                  max_retries: int = DEFAULT_MAX_RETRIES, tolerance: float = DEFAULT_TOLERANCE) -> MubSet:
    """
    Complete set of n+1 MUBs for n = p^k

    Basis 0 is the standard basis (the eigenbasis of the Z class); basis I >= 1
    is the joint eigenbasis of Weyl class I.

    Args:
        field: GF(n)
        seed: Seed for the Hermitian combinations
        max_order: Largest n accepted
        max_retries: Attempts per class before DegenerateCombination
        tolerance: Verification tolerance

    Returns:
        MubSet that passed mub_verify
    """
    classes = weyl_partition(field, max_order=max_order)
    n = field.order

    bases = [np.eye(n, dtype=np.complex128)]
    for index, weyl_class in enumerate(classes[1:], start=1):
        bases.append(joint_eigenbasis(weyl_class, field.p, seed, index, max_retries))

    mubs = MubSet(n, np.array(bases), {
        "p": field.p,
        "k": field.k,
        "modulus": list(field.modulus),
        "seed": seed,
        "construction": "weyl",
    })

    report = mub_verify(mubs, tolerance)
    if not report.passed:
        raise InvalidMubSet(
            f"Constructed bases for n={n} fail verification: unbiasedness deviation "
            f"{report.unbiasedness_deviation:.3e} at {report.worst_pair}")

    logger.info(f"Constructed {n + 1} MUBs for n={n} (max deviation {report.unbiasedness_deviation:.2e})")
    return mubs


def mub_for_dimension(n: int, seed: int = DEFAULT_SEED, max_order: int = DEFAULT_MUB_ORDER_CAP,
                      max_retries: int = DEFAULT_MAX_RETRIES, tolerance: float = DEFAULT_TOLERANCE) -> MubSet:
    """mub_construct over GF(n); OrderNotPrimePower for n = 6, 10, ..."""
    decomposition = prime_power(n)
    if decomposition is None:
        raise OrderNotPrimePower(f"{n} is not a prime power; no field-based MUB construction exists")
    if n > max_order:
        raise OrderTooLarge(f"MUB construction capped at order {max_order}, got {n}")
    return mub_construct(field_create(*decomposition), seed, max_order, max_retries, tolerance)


def character_mubs(field: FieldTable) -> MubSet:
    """
    Quadratic character construction for odd characteristic

    Basis 0 is the standard basis; basis 1+a holds the vectors
    e_b(x) = omega^{tr(a x^2 + b x)} / sqrt(n), one row per b.
    """
    if field.p == 2:
        raise EvenCharacteristic("Character formula requires odd characteristic")

    n = field.order
    x = np.arange(n)
    squares = field.mul_table[x, x].astype(np.int64)
    linear = field.mul_table.astype(np.int64)  # [b, x] -> b x

    bases = [np.eye(n, dtype=np.complex128)]
    for a in range(n):
        quadratic = field.mul_table[a][squares].astype(np.int64)
        exponents = field.add_table[quadratic[None, :], linear]
        bases.append(character(field, exponents) / np.sqrt(n))

    return MubSet(n, np.array(bases), {"p": field.p, "k": field.k, "construction": "character"})


def bases_equivalent(first: np.ndarray, second: np.ndarray, tolerance: float = 1e-8) -> bool:
    """Same basis up to vector order and phases: |<x_i|y_j>|^2 is a permutation matrix"""
    first, second = np.asarray(first), np.asarray(second)
    if first.shape != second.shape:
        return False
    weights = np.abs(first.conj() @ second.T) ** 2
    ones = np.abs(weights - 1.0) <= tolerance
    zeros = np.abs(weights) <= tolerance
    return bool(np.all(ones | zeros) and np.all(ones.sum(axis=0) == 1) and np.all(ones.sum(axis=1) == 1))


def mub_sets_equivalent(first: MubSet, second: MubSet, tolerance: float = 1e-8) -> bool:
    """Same bases up to basis order, vector order and phases"""
    if first.n != second.n or first.num_bases != second.num_bases:
        return False
    unmatched = list(range(second.num_bases))
    for basis in first.bases:
        match = next((j for j in unmatched if bases_equivalent(basis, second.bases[j], tolerance)), None)
        if match is None:
            return False
        unmatched.remove(match)
    return True
