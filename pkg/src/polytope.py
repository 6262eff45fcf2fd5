"""
Complementarity Polytope
Corners P_Ii arranged as n+1 regular simplices in orthogonal subspaces,
point-face operators, D-simplex inscription through an affine plane and
the SIC candidate test
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import helmert
from scipy.stats import ortho_group
from tqdm import tqdm

from affine import AffinePlane, verify_axioms
from errors import (
    AbstractRealization,
    DimensionMismatch,
    GramMismatch,
    IncompleteChoice,
    InvalidMubSet,
    InvalidPlane,
    MubGeoError,
    PlaneOrderMismatch,
    UnknownLine,
)
from hspace import SPECTRAL_TOL, HermitianOp, as_op, gell_mann_basis, spectra
from mub import MubSet, mub_verify
from serialization import complex_to_json

logger = logging.getLogger(__name__)

QUANTUM = "quantum"
ABSTRACT = "abstract"

SIC_TOL = 1e-8

# Rescaling side for SIC candidates, in sweep order
FACET = "facet"
POINT = "point"
ORIENTATIONS = (FACET, POINT)

# Every LineAssignment of an order-3 plane in one orientation: 4! * (3!)^4
DEFAULT_MAX_SELECTIONS = 31104


@dataclass(frozen=True)
class PolytopeReport:
    n: int
    trace_error: float
    purity_error: float
    within_simplex_error: float
    cross_simplex_error: float
    radius_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.trace_error, self.purity_error, self.within_simplex_error,
                   self.cross_simplex_error, self.radius_error) <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "trace_error": self.trace_error,
            "purity_error": self.purity_error,
            "within_simplex_error": self.within_simplex_error,
            "cross_simplex_error": self.cross_simplex_error,
            "radius_error": self.radius_error,
            "passed": self.passed,
        }


@dataclass(frozen=True, eq=False)
class Polytope:
    """
    Corners indexed [simplex I, corner i] as n x n Hermitian matrices

    realization is 'quantum' when the corners are MUB projectors and
    'abstract' when they were placed directly in Bloch space.
    """

    n: int
    corners: np.ndarray
    realization: str = QUANTUM
    mubs: Optional[MubSet] = None

    def __post_init__(self):
        corners = np.array(self.corners, dtype=np.complex128)
        if corners.shape != (self.n + 1, self.n, self.n, self.n):
            raise DimensionMismatch(
                f"Expected corners of shape {(self.n + 1, self.n, self.n, self.n)}, got {corners.shape}")
        corners.flags.writeable = False
        object.__setattr__(self, "corners", corners)

    @property
    def num_corners(self) -> int:
        return (self.n + 1) * self.n

    def corner(self, simplex: int, index: int) -> HermitianOp:
        return HermitianOp(self.corners[simplex, index])

    def flat_corners(self) -> np.ndarray:
        return self.corners.reshape(self.num_corners, self.n, self.n)

    def trace_products(self) -> np.ndarray:
        """Tr P_a P_b over flattened corner indices a = I*n + i"""
        flat = self.flat_corners()
        return np.real(np.einsum("aij,bji->ab", flat, flat))

    def corner_gram(self) -> np.ndarray:
        """Scalar products of the corners, i.e. the Gram matrix of their Bloch vectors"""
        return 0.5 * (self.trace_products() - 1.0 / self.n)

    def corner_bloch(self) -> np.ndarray:
        basis = gell_mann_basis(self.n)
        return 0.5 * np.real(np.einsum("kij,aji->ak", basis, self.flat_corners()))

    def verify(self, tolerance: float = SPECTRAL_TOL) -> PolytopeReport:
        """Check unit trace, purity, within-simplex orthogonality, cross-simplex 1/n and the radius"""
        n = self.n
        products = self.trace_products()
        traces = np.real(np.einsum("aii->a", self.flat_corners()))

        block = np.kron(np.eye(n + 1), np.ones((n, n))).astype(bool)
        off_diagonal = block & ~np.eye(self.num_corners, dtype=bool)

        radius_sq = np.diag(self.corner_gram())
        return PolytopeReport(
            n=n,
            trace_error=float(np.abs(traces - 1.0).max()),
            purity_error=float(np.abs(np.diag(products) - 1.0).max()),
            within_simplex_error=float(np.abs(products[off_diagonal]).max()) if n > 1 else 0.0,
            cross_simplex_error=float(np.abs(products[~block] - 1.0 / n).max()),
            radius_error=float(np.abs(radius_sq - (n - 1) / (2 * n)).max()),
            tolerance=tolerance,
        )


def polytope_from_mubs(mubs: MubSet, tolerance: float = SPECTRAL_TOL) -> Polytope:
    """
    Corners P_Ii = |e_Ii><e_Ii| of a complete MUB set

    Args:
        mubs: n+1 bases passing mub_verify
        tolerance: Verification tolerance

    Returns:
        Polytope with realization 'quantum'
    """
    if mubs.num_bases != mubs.n + 1:
        raise InvalidMubSet(f"Need {mubs.n + 1} bases for a polytope, got {mubs.num_bases}")
    report = mub_verify(mubs, tolerance)
    if not report.passed:
        raise InvalidMubSet(
            f"Bases are not mutually unbiased: deviation {report.unbiasedness_deviation:.3e} "
            f"at {report.worst_pair}")

    poly = Polytope(mubs.n, mubs.projector_matrices(), QUANTUM, mubs)
    check = poly.verify(tolerance)
    if not check.passed:
        raise InvalidMubSet(f"MUB projectors violate the polytope identities: {check.to_dict()}")
    logger.info(f"Built quantum polytope for n={mubs.n} with {poly.num_corners} corners")
    return poly


def _corners_from_bloch(n: int, coords: np.ndarray) -> np.ndarray:
    basis = gell_mann_basis(n)
    matrices = np.eye(n) / n + np.einsum("ak,kij->aij", coords, basis)
    return matrices.reshape(n + 1, n, n, n)


def polytope_abstract(n: int) -> Polytope:
    """
    Polytope placed directly in Bloch space

    Simplex I occupies coordinates I*(n-1) .. (I+1)*(n-1)-1; its corners are
    the Helmert columns scaled by 1/sqrt(2), a centred regular simplex of
    radius sqrt((n-1)/2n). Corners need not be positive.
    """
    if n < 2:
        raise DimensionMismatch(f"Polytope needs n >= 2, got {n}")

    simplex = helmert(n) / math.sqrt(2.0)  # (n-1, n), columns are vertices
    coords = np.zeros(((n + 1) * n, n * n - 1))
    for I in range(n + 1):
        coords[I * n:(I + 1) * n, I * (n - 1):(I + 1) * (n - 1)] = simplex.T

    poly = Polytope(n, _corners_from_bloch(n, coords), ABSTRACT)
    logger.info(f"Built abstract polytope for n={n}")
    return poly


def random_rotation(dim: int, seed=None) -> np.ndarray:
    """Haar-random element of O(dim)"""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return ortho_group.rvs(dim, random_state=rng)


def rotate_polytope(poly: Polytope, rotation: np.ndarray) -> Polytope:
    """Apply an orthogonal map to every corner's Bloch vector; the result is abstract"""
    d = poly.n * poly.n - 1
    rotation = np.asarray(rotation, dtype=np.float64)
    if rotation.shape != (d, d):
        raise DimensionMismatch(f"Rotation must be {d}x{d}, got {rotation.shape}")
    if not np.allclose(rotation @ rotation.T, np.eye(d), atol=1e-10):
        raise DimensionMismatch("Rotation matrix is not orthogonal")

    coords = poly.corner_bloch() @ rotation.T
    return Polytope(poly.n, _corners_from_bloch(poly.n, coords), ABSTRACT)


@dataclass(frozen=True)
class PositivityReport:
    min_eigenvalues: Tuple[Tuple[float, ...], ...]
    worst: float
    worst_corner: Tuple[int, int]
    tolerance: float

    @property
    def is_density_set(self) -> bool:
        return self.worst >= -self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "min_eigenvalues": [list(row) for row in self.min_eigenvalues],
            "worst": self.worst,
            "worst_corner": list(self.worst_corner),
            "is_density_set": self.is_density_set,
        }


def positivity_report(poly: Polytope, tolerance: float = SPECTRAL_TOL) -> PositivityReport:
    """Smallest eigenvalue of every corner"""
    minima = spectra(poly.corners)[..., 0]
    worst = np.unravel_index(int(np.argmin(minima)), minima.shape)
    return PositivityReport(
        min_eigenvalues=tuple(tuple(float(v) for v in row) for row in minima),
        worst=float(minima[worst]),
        worst_corner=(int(worst[0]), int(worst[1])),
        tolerance=tolerance,
    )


@dataclass(frozen=True, eq=False)
class PointFaceOperator:
    """A = sum_I P_{I, choice[I]} - n rho_*"""

    choice: Tuple[int, ...]
    op: HermitianOp

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix


Choice = Union[Sequence[int], Mapping[int, int]]


def _normalize_choice(poly: Polytope, choice: Choice) -> Tuple[int, ...]:
    n = poly.n
    if isinstance(choice, Mapping):
        if set(choice) != set(range(n + 1)):
            raise IncompleteChoice(f"Choice must select a corner for each of the {n + 1} simplices")
        choice = [choice[I] for I in range(n + 1)]
    choice = tuple(int(i) for i in choice)
    if len(choice) != n + 1:
        raise IncompleteChoice(f"Choice has {len(choice)} entries, expected {n + 1}")
    if any(not 0 <= i < n for i in choice):
        raise IncompleteChoice(f"Choice {choice} selects a corner outside 0..{n - 1}")
    return choice


def point_face_operator(poly: Polytope, choice: Choice) -> PointFaceOperator:
    """
    Operator of the point face spanned by one corner per simplex

    Args:
        poly: Polytope
        choice: Corner index for each simplex I = 0..n

    Returns:
        PointFaceOperator with Tr A = 1 and Tr A^2 = n
    """
    choice = _normalize_choice(poly, choice)
    matrix = poly.corners[np.arange(poly.n + 1), list(choice)].sum(axis=0) - np.eye(poly.n)
    return PointFaceOperator(choice, HermitianOp(matrix))


def point_face_center(poly: Polytope, choice: Choice) -> HermitianOp:
    """Barycentre of the n+1 corners of a point face"""
    choice = _normalize_choice(poly, choice)
    return HermitianOp(poly.corners[np.arange(poly.n + 1), list(choice)].mean(axis=0))


def facet_evaluate(operator: PointFaceOperator, rho) -> float:
    """Tr A rho: 1 on the point face, 0 on the opposite facet"""
    return operator.op.trace_product(as_op(rho, unit_trace=False))


def corner_values(poly: Polytope, operator: PointFaceOperator) -> np.ndarray:
    """Tr A P_Ii for every corner, shape (n+1, n)"""
    return np.real(np.einsum("ij,Ikji->Ik", operator.matrix, poly.corners))


@dataclass(frozen=True)
class LineAssignment:
    """
    Bijections pencil -> simplex and, per pencil, line position -> corner

    The identity assignment pairs pencil q with simplex q and the k-th line
    of a pencil with corner k.
    """

    pencil_to_simplex: Tuple[int, ...]
    line_to_corner: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        simplices = tuple(int(v) for v in self.pencil_to_simplex)
        corners = tuple(tuple(int(v) for v in perm) for perm in self.line_to_corner)
        n = len(simplices) - 1
        if sorted(simplices) != list(range(n + 1)):
            raise IncompleteChoice(f"Pencil map {simplices} is not a permutation")
        if len(corners) != n + 1 or any(sorted(perm) != list(range(n)) for perm in corners):
            raise IncompleteChoice("Line maps must be one permutation of 0..n-1 per pencil")
        object.__setattr__(self, "pencil_to_simplex", simplices)
        object.__setattr__(self, "line_to_corner", corners)

    @property
    def n(self) -> int:
        return len(self.pencil_to_simplex) - 1

    @classmethod
    def identity(cls, n: int) -> "LineAssignment":
        return cls(tuple(range(n + 1)), tuple(tuple(range(n)) for _ in range(n + 1)))

    def corner_of(self, pencil: int, position: int) -> Tuple[int, int]:
        return self.pencil_to_simplex[pencil], self.line_to_corner[pencil][position]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pencil_to_simplex": list(self.pencil_to_simplex),
            "line_to_corner": [list(perm) for perm in self.line_to_corner],
        }


def iter_assignments(n: int):
    """Pencil permutations outermost, then per-pencil line permutations in product order"""
    line_perms = list(itertools.permutations(range(n)))
    for pencils in itertools.permutations(range(n + 1)):
        for lines in itertools.product(line_perms, repeat=n + 1):
            yield LineAssignment(pencils, lines)


def _choice_table(plane: AffinePlane, assignment: LineAssignment) -> np.ndarray:
    """[point, simplex] -> corner selected by the point"""
    n = plane.n
    table = np.empty((plane.num_points, n + 1), dtype=np.int64)
    for point in plane.points:
        for q, line in enumerate(plane.lines_through(point)):
            simplex, corner = assignment.corner_of(q, plane.position_in_pencil(line)[1])
            table[point, simplex] = corner
    return table


@dataclass(frozen=True, eq=False)
class DSimplex:
    """n^2 point-face operators, one per affine-plane point"""

    n: int
    plane: AffinePlane
    polytope: Polytope
    operators: Tuple[PointFaceOperator, ...]
    assignment: LineAssignment
    gram_error: float

    def matrices(self) -> np.ndarray:
        return np.array([op.matrix for op in self.operators])

    def gram(self) -> np.ndarray:
        """Tr A_alpha A_beta"""
        stack = self.matrices()
        return np.real(np.einsum("aij,bji->ab", stack, stack))

    def corner_of_line(self, line: int) -> Tuple[int, int]:
        if not 0 <= line < len(self.plane.lines):
            raise UnknownLine(f"Line {line} outside 0..{len(self.plane.lines) - 1}")
        pencil, position = self.plane.position_in_pencil(line)
        return self.assignment.corner_of(pencil, position)

    def line_projector(self, line: int) -> HermitianOp:
        simplex, corner = self.corner_of_line(line)
        return self.polytope.corner(simplex, corner)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "realization": self.polytope.realization,
            "plane": self.plane.to_dict(),
            "assignment": self.assignment.to_dict(),
            "choices": [list(op.choice) for op in self.operators],
            "matrices": complex_to_json(self.matrices()),
            "gram_error": self.gram_error,
        }


def inscribe_dsimplex(poly: Polytope, plane: AffinePlane, assignment: Optional[LineAssignment] = None,
                      tolerance: float = SPECTRAL_TOL) -> DSimplex:
    """
    Select one point face per plane point

    Point alpha picks, in every pencil, the line through alpha; that line's
    corner is taken from the simplex paired with the pencil. Two points share
    exactly one line, so their operators are orthogonal.

    Args:
        poly: Polytope of dimension n
        plane: Affine plane of order n
        assignment: Pencil/line pairing (identity by default)
        tolerance: Accepted deviation of Gram(A) from n * I

    Returns:
        DSimplex

    Raises:
        GramMismatch: Gram(A) deviates from n * I beyond tolerance
    """
    if plane.n != poly.n:
        raise PlaneOrderMismatch(f"Plane of order {plane.n} for a polytope with n={poly.n}")
    report = verify_axioms(plane)
    if not report.passed:
        raise InvalidPlane(f"Plane fails {', '.join(report.failures())}")

    n = poly.n
    assignment = assignment or LineAssignment.identity(n)
    if assignment.n != n:
        raise IncompleteChoice(f"Assignment is for n={assignment.n}, polytope has n={n}")

    table = _choice_table(plane, assignment)
    operators = tuple(point_face_operator(poly, tuple(row)) for row in table)

    stack = np.array([op.matrix for op in operators])
    gram = np.real(np.einsum("aij,bji->ab", stack, stack))
    gram_error = float(np.abs(gram - n * np.eye(n * n)).max())
    if gram_error > tolerance:
        logger.error(f"D-simplex Gram deviates from {n}*I by {gram_error:.3e}")
        raise GramMismatch(f"Gram matrix of the point-face operators deviates from {n}*I by {gram_error:.3e}")
    logger.info(f"Inscribed D-simplex for n={n} (Gram error {gram_error:.2e})")

    return DSimplex(n, plane, poly, operators, assignment, gram_error)


def operator_average(dsimplex: DSimplex, points: Sequence[int]) -> HermitianOp:
    """(1/n) sum of A_alpha over the given points"""
    stack = dsimplex.matrices()[list(points)]
    return HermitianOp(stack.sum(axis=0) / dsimplex.n, unit_trace=False)


def corner_from_dsimplex(dsimplex: DSimplex, line: int) -> HermitianOp:
    """Recover P_line as the average of A_alpha over the points of the line"""
    if not 0 <= line < len(dsimplex.plane.lines):
        raise UnknownLine(f"Line {line} outside 0..{len(dsimplex.plane.lines) - 1}")
    return as_op(operator_average(dsimplex, dsimplex.plane.lines[line]).matrix)


def sic_rescale(matrices: np.ndarray, n: int, orientation: str = FACET) -> np.ndarray:
    """
    rho = rho_* -+ (A - rho_*)/sqrt(n+1), elementwise over a stack

    'facet' reflects through rho_*, landing in the middle of the facet
    opposite the point face; 'point' stays on the point-face side.
    """
    if orientation not in ORIENTATIONS:
        raise MubGeoError(f"Orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    sign = -1.0 if orientation == FACET else 1.0
    mixed = np.eye(n) / n
    return mixed + sign * (matrices - mixed) / math.sqrt(n + 1)


@dataclass(frozen=True)
class SicEntry:
    point: int
    purity: float
    cubic_trace: float
    min_eigenvalue: float
    is_pure_state: bool


@dataclass(frozen=True)
class SicReport:
    n: int
    entries: Tuple[SicEntry, ...]
    overlap_error: float
    tolerance: float
    orientation: str = FACET

    @property
    def is_sic(self) -> bool:
        return all(entry.is_pure_state for entry in self.entries) and self.overlap_error <= self.tolerance

    @property
    def min_eigenvalue(self) -> float:
        return min(entry.min_eigenvalue for entry in self.entries)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "orientation": self.orientation,
            "is_sic": self.is_sic,
            "min_eigenvalue": self.min_eigenvalue,
            "overlap_error": self.overlap_error,
            "entries": [entry.__dict__ for entry in self.entries],
        }


def sic_candidate(dsimplex: DSimplex, tolerance: float = SIC_TOL, orientation: str = FACET) -> SicReport:
    """
    Rescale the D-simplex onto the pure-state sphere and test positivity

    The rescaled operators always have Tr rho^2 = 1 and pairwise overlaps
    1/(n+1), on either side of rho_*; they form a SIC exactly when every
    one is positive.
    """
    if dsimplex.polytope.realization != QUANTUM:
        raise AbstractRealization("SIC test needs a polytope whose corners are MUB projectors")

    n = dsimplex.n
    states = sic_rescale(dsimplex.matrices(), n, orientation)
    minima = spectra(states)[:, 0]
    products = np.real(np.einsum("aij,bji->ab", states, states))
    cubes = np.real(np.einsum("aij,ajk,aki->a", states, states, states))

    entries = []
    for point in range(n * n):
        purity = float(products[point, point])
        cube = float(cubes[point])
        min_eig = float(minima[point])
        pure = abs(purity - 1) <= tolerance and abs(cube - 1) <= tolerance and min_eig >= -tolerance
        entries.append(SicEntry(point, purity, cube, min_eig, pure))

    off = ~np.eye(n * n, dtype=bool)
    overlap_error = float(np.abs(products[off] - 1.0 / (n + 1)).max()) if n * n > 1 else 0.0
    return SicReport(n, tuple(entries), overlap_error, tolerance, orientation)


@dataclass(frozen=True)
class SicSearchResult:
    n: int
    found: bool
    assignment: Optional[LineAssignment]
    orientation: Optional[str]
    selections_tried: int
    exhaustive: bool
    best_min_eigenvalue: float
    best_assignment: Optional[LineAssignment]
    best_orientation: Optional[str]

    @property
    def status(self) -> str:
        if self.found:
            return "found"
        return "not_found" if self.exhaustive else "indeterminate"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "status": self.status,
            "selections_tried": self.selections_tried,
            "exhaustive": self.exhaustive,
            "best_min_eigenvalue": self.best_min_eigenvalue,
            "orientation": self.orientation,
            "assignment": self.assignment.to_dict() if self.assignment else None,
            "best_orientation": self.best_orientation,
            "best_assignment": self.best_assignment.to_dict() if self.best_assignment else None,
        }


def count_selections(n: int, orientations: Sequence[str] = ORIENTATIONS) -> int:
    """Orientations times (n+1)! pencil maps times (n!)^(n+1) line maps"""
    return len(orientations) * math.factorial(n + 1) * math.factorial(n) ** (n + 1)


def search_sic_selection(poly: Polytope, plane: AffinePlane,
                         max_selections: Optional[int] = DEFAULT_MAX_SELECTIONS,
                         tolerance: float = SIC_TOL, progress: bool = False,
                         orientations: Sequence[str] = ORIENTATIONS) -> SicSearchResult:
    """
    Bounded deterministic sweep over (orientation, line assignment) selections

    Orientations are swept outermost in the given order, each over every
    assignment from iter_assignments.

    Args:
        poly: Quantum polytope
        plane: Affine plane of the same order
        max_selections: Stop after this many selections (None for no bound)
        tolerance: Positivity tolerance for the rescaled operators
        progress: Show a tqdm bar over the selections
        orientations: Rescaling sides to try

    Returns:
        SicSearchResult with the first SIC selection, or the best minimum eigenvalue seen
    """
    if poly.realization != QUANTUM:
        raise AbstractRealization("SIC search needs a polytope whose corners are MUB projectors")
    if plane.n != poly.n:
        raise PlaneOrderMismatch(f"Plane of order {plane.n} for a polytope with n={poly.n}")
    if not orientations or any(o not in ORIENTATIONS for o in orientations):
        raise MubGeoError(f"Orientations must be drawn from {ORIENTATIONS}, got {tuple(orientations)!r}")
    report = verify_axioms(plane)
    if not report.passed:
        raise InvalidPlane(f"Plane fails {', '.join(report.failures())}")

    n = poly.n
    # [point, pencil] -> position of the line through the point
    positions = np.array([
        [plane.position_in_pencil(line)[1] for line in plane.lines_through(point)]
        for point in plane.points
    ])
    pencil_index = np.arange(n + 1)
    identity = np.eye(n)

    total = count_selections(n, orientations)
    if max_selections is not None:
        total = min(total, max_selections)

    tried = 0
    best = -np.inf
    best_assignment = None
    best_orientation = None

    selections = ((orientation, assignment)
                  for orientation in orientations for assignment in iter_assignments(n))
    with tqdm(total=total, desc=f"SIC sweep n={n}", disable=not progress) as bar:
        for orientation, assignment in selections:
            if max_selections is not None and tried >= max_selections:
                logger.info(f"No SIC selection for n={n} in {tried} selections "
                            f"(truncated; best min eigenvalue {best:.4f})")
                return SicSearchResult(n, False, None, None, tried, False, float(best),
                                       best_assignment, best_orientation)
            tried += 1
            bar.update()

            simplices = np.array(assignment.pencil_to_simplex)
            corner_idx = np.array(assignment.line_to_corner)[pencil_index[None, :], positions]
            matrices = poly.corners[simplices[None, :], corner_idx].sum(axis=1) - identity
            min_eig = float(spectra(sic_rescale(matrices, n, orientation))[:, 0].min())

            if min_eig > best:
                best, best_assignment, best_orientation = min_eig, assignment, orientation
            if min_eig >= -tolerance:
                logger.info(f"SIC selection for n={n} found after {tried} selections ({orientation} side)")
                return SicSearchResult(n, True, assignment, orientation, tried, True, best,
                                       assignment, orientation)

    logger.info(f"No SIC selection for n={n} in {tried} selections "
                f"(exhaustive; best min eigenvalue {best:.4f})")
    return SicSearchResult(n, False, None, None, tried, True, float(best), best_assignment, best_orientation)
