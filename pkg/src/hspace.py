"""
Hermitian Operator Space
Unit-trace Hermitian matrices as a Euclidean space centred on the maximally
mixed state, with Bloch coordinates in the generalized Gell-Mann basis
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from scipy.linalg import eigvalsh, ishermitian
from scipy.stats import unitary_group

from errors import DimensionMismatch, NotHermitian, NotUnitTrace

logger = logging.getLogger(__name__)

# Identities that hold by construction
CONSTRUCTIVE_TOL = 1e-12

# Quantities derived through an eigensolver or a long sum
SPECTRAL_TOL = 1e-10


class HermitianOp:
    """
    Hermitian n x n matrix

    Elements of the unit-trace space are created with unit_trace=True (the
    default); traceless differences and other raw Hermitian matrices pass
    unit_trace=False.
    """

    def __init__(self, matrix, unit_trace: bool = True):
        m = np.array(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DimensionMismatch(f"Expected a square matrix, got shape {m.shape}")

        scale = max(1.0, float(np.abs(m).max()))
        if not ishermitian(m, atol=CONSTRUCTIVE_TOL * scale):
            deviation = float(np.abs(m - m.conj().T).max())
            raise NotHermitian(f"Matrix deviates from its adjoint by {deviation:.3e}")

        m = (m + m.conj().T) / 2
        if unit_trace:
            trace = float(np.real(np.trace(m)))
            if abs(trace - 1.0) > CONSTRUCTIVE_TOL * scale * m.shape[0]:
                raise NotUnitTrace(f"Trace is {trace!r}, expected 1")
        m.flags.writeable = False
        self.matrix = m

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def is_unit_trace(self, tolerance: float = CONSTRUCTIVE_TOL) -> bool:
        return abs(self.trace() - 1.0) <= tolerance * max(1.0, float(np.abs(self.matrix).max())) * self.n

    def trace_product(self, other: "HermitianOp") -> float:
        """Re Tr(self @ other)"""
        _check_same_dimension(self, other)
        return float(np.real(np.sum(self.matrix * other.matrix.T)))

    def purity(self) -> float:
        """Tr A^2"""
        return self.trace_product(self)

    def trace_power(self, k: int) -> float:
        return float(np.real(np.trace(np.linalg.matrix_power(self.matrix, k))))

    def eigenvalues(self) -> np.ndarray:
        """Ascending real spectrum"""
        return eigvalsh(self.matrix, check_finite=False)

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    def is_positive(self, tolerance: float = SPECTRAL_TOL) -> bool:
        return self.min_eigenvalue() >= -tolerance

    def __add__(self, other: "HermitianOp") -> "HermitianOp":
        _check_same_dimension(self, other)
        return HermitianOp(self.matrix + other.matrix, unit_trace=False)

    def __sub__(self, other: "HermitianOp") -> "HermitianOp":
        _check_same_dimension(self, other)
        return HermitianOp(self.matrix - other.matrix, unit_trace=False)

    def __mul__(self, factor: float) -> "HermitianOp":
        return HermitianOp(self.matrix * float(factor), unit_trace=False)

    __rmul__ = __mul__

    def allclose(self, other: "HermitianOp", tolerance: float = SPECTRAL_TOL) -> bool:
        return self.n == other.n and bool(np.abs(self.matrix - other.matrix).max() <= tolerance)

    def __repr__(self) -> str:
        return f"HermitianOp(n={self.n}, trace={self.trace():.6g})"


Operator = Union[HermitianOp, np.ndarray]


def as_op(value: Operator, unit_trace: bool = True) -> HermitianOp:
    return value if isinstance(value, HermitianOp) else HermitianOp(value, unit_trace=unit_trace)


def _check_same_dimension(a: HermitianOp, b: HermitianOp):
    if a.n != b.n:
        raise DimensionMismatch(f"Dimensions differ: {a.n} vs {b.n}")


def maximally_mixed(n: int) -> HermitianOp:
    """rho_* = I/n, the origin of the space"""
    if n < 1:
        raise DimensionMismatch(f"Dimension must be >= 1, got {n}")
    return HermitianOp(np.eye(n) / n)


def projector(vector) -> HermitianOp:
    """|v><v| / <v|v>"""
    v = np.asarray(vector, dtype=np.complex128).ravel()
    return HermitianOp(np.outer(v, v.conj()) / np.vdot(v, v).real)


def spectra(stack: np.ndarray) -> np.ndarray:
    """Ascending spectra of a stack of Hermitian matrices, shape stack.shape[:-1]"""
    stack = np.asarray(stack)
    n = stack.shape[-1]
    flat = stack.reshape(-1, n, n)
    values = np.array([eigvalsh(m, check_finite=False) for m in flat])
    return values.reshape(stack.shape[:-1])


def distance_sq(a: Operator, b: Operator) -> float:
    """
    Squared distance D^2 = 1/2 Tr (A - B)^2

    Args:
        a: Hermitian operator
        b: Hermitian operator of the same dimension

    Returns:
        Non-negative float
    """
    a, b = as_op(a, unit_trace=False), as_op(b, unit_trace=False)
    _check_same_dimension(a, b)
    return 0.5 * float(np.sum(np.abs(a.matrix - b.matrix) ** 2))


def scalar(a: Operator, b: Operator) -> float:
    """
    Scalar product (A, B) = 1/2 [Tr AB - 1/n] of two unit-trace operators

    Args:
        a: Unit-trace Hermitian operator
        b: Unit-trace Hermitian operator of the same dimension

    Returns:
        float; scalar(A, A) equals distance_sq(A, rho_*)
    """
    a, b = as_op(a, unit_trace=False), as_op(b, unit_trace=False)
    _check_same_dimension(a, b)
    for label, op in (("first", a), ("second", b)):
        if not op.is_unit_trace():
            raise NotUnitTrace(f"{label} operator has trace {op.trace()!r}")
    return 0.5 * (a.trace_product(b) - 1.0 / a.n)


@lru_cache(maxsize=32)
def gell_mann_basis(n: int) -> np.ndarray:
    """
    Traceless Hermitian basis E_k with 1/2 Tr E_k E_l = delta_kl

    Ordering: symmetric pairs (j < k), antisymmetric pairs (j < k), then the
    n-1 diagonal matrices.

    Returns:
        Read-only array of shape (n^2 - 1, n, n)
    """
    basis = []
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    for j, k in pairs:
        e = np.zeros((n, n), dtype=np.complex128)
        e[j, k] = e[k, j] = 1
        basis.append(e)
    for j, k in pairs:
        e = np.zeros((n, n), dtype=np.complex128)
        e[j, k] = -1j
        e[k, j] = 1j
        basis.append(e)
    for l in range(1, n):
        diagonal = np.zeros(n)
        diagonal[:l] = 1
        diagonal[l] = -l
        basis.append(np.diag(diagonal * math.sqrt(2.0 / (l * (l + 1)))).astype(np.complex128))

    result = np.array(basis, dtype=np.complex128).reshape(n * n - 1, n, n)
    result.flags.writeable = False
    return result


@dataclass(frozen=True, eq=False)
class BlochVector:
    n: int
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=np.float64).ravel()
        if coords.shape[0] != self.n * self.n - 1:
            raise DimensionMismatch(f"Bloch vector for n={self.n} needs {self.n * self.n - 1} coordinates")
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def __eq__(self, other) -> bool:
        return isinstance(other, BlochVector) and self.n == other.n and np.array_equal(self.coords, other.coords)


def to_bloch(op: Operator) -> BlochVector:
    """coords_k = 1/2 Tr(E_k A)"""
    op = as_op(op, unit_trace=False)
    basis = gell_mann_basis(op.n)
    coords = 0.5 * np.real(np.einsum("kij,ji->k", basis, op.matrix))
    return BlochVector(op.n, coords)


def from_bloch(vector: Union[BlochVector, np.ndarray], n: Optional[int] = None) -> HermitianOp:
    """
    Inverse of to_bloch: A = I/n + sum_k c_k E_k

    Args:
        vector: BlochVector, or raw coordinates together with n
        n: Dimension when raw coordinates are given

    Returns:
        Unit-trace HermitianOp
    """
    if not isinstance(vector, BlochVector):
        coords = np.asarray(vector, dtype=np.float64).ravel()
        if n is None:
            n = math.isqrt(coords.shape[0] + 1)
        vector = BlochVector(n, coords)
    basis = gell_mann_basis(vector.n)
    matrix = np.eye(vector.n) / vector.n + np.einsum("k,kij->ij", vector.coords, basis)
    return HermitianOp(matrix)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_state_vector(n: int, seed=None) -> np.ndarray:
    """Haar-random unit vector: first column of a Haar unitary"""
    return unitary_group.rvs(n, random_state=_rng(seed))[:, 0]


def random_pure_state(n: int, seed=None) -> HermitianOp:
    return projector(random_state_vector(n, seed))


def random_density_matrix(n: int, rank: Optional[int] = None, seed=None) -> HermitianOp:
    """
    U diag(w) U^dagger with a Haar unitary U and Dirichlet weights w

    Args:
        n: Dimension
        rank: Number of non-zero eigenvalues (default n)
        seed: int or numpy Generator

    Returns:
        Positive semidefinite unit-trace HermitianOp
    """
    rng = _rng(seed)
    rank = n if rank is None else rank
    weights = np.zeros(n)
    weights[:rank] = rng.dirichlet(np.ones(rank))
    unitary = unitary_group.rvs(n, random_state=rng)
    return HermitianOp((unitary * weights) @ unitary.conj().T)


def random_unit_trace_hermitian(n: int, seed=None) -> HermitianOp:
    """Gaussian Hermitian matrix shifted onto the unit-trace plane; usually not positive"""
    rng = _rng(seed)
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = (x + x.conj().T) / 2
    h += np.eye(n) * (1.0 - np.trace(h).real) / n
    return HermitianOp(h)
