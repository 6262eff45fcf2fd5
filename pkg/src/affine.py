"""
Finite Affine Planes
Incidence structures with pencils of parallel lines, axiom verification,
and the conversions to and from MOLS and finite fields
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from errors import (
    IndexOutOfRange,
    InvalidPlane,
    MalformedIncidence,
    SamePencil,
    WrongCount,
)
from gf import FieldTable
from latin import LatinSquare, MolsSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffinePlane:
    """
    Incidence structure on points 0..n^2-1

    Lines are tuples of point labels; pencils are tuples of line indices. The
    pencil order fixes the pairing with MUB bases downstream.
    """

    n: int
    lines: Tuple[Tuple[int, ...], ...]
    pencils: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise MalformedIncidence(f"Plane order must be >= 1, got {self.n}")

        lines = tuple(tuple(sorted(int(p) for p in line)) for line in self.lines)
        pencils = tuple(tuple(int(l) for l in pencil) for pencil in self.pencils)
        num_points = self.n * self.n

        if not lines:
            raise MalformedIncidence("Plane has no lines")
        if not pencils:
            raise MalformedIncidence("Plane has no pencils")
        for index, line in enumerate(lines):
            if not line:
                raise MalformedIncidence(f"Line {index} is empty")
            if len(set(line)) != len(line):
                raise MalformedIncidence(f"Line {index} repeats a point")
            if line[0] < 0 or line[-1] >= num_points:
                raise MalformedIncidence(f"Line {index} has points outside 0..{num_points - 1}")
        for index, pencil in enumerate(pencils):
            if not pencil:
                raise MalformedIncidence(f"Pencil {index} is empty")
            if any(l < 0 or l >= len(lines) for l in pencil):
                raise MalformedIncidence(f"Pencil {index} references an unknown line")

        object.__setattr__(self, "lines", lines)
        object.__setattr__(self, "pencils", pencils)

    @property
    def num_points(self) -> int:
        return self.n * self.n

    @property
    def points(self) -> range:
        return range(self.num_points)

    @cached_property
    def incidence(self) -> np.ndarray:
        matrix = np.zeros((len(self.lines), self.num_points), dtype=np.int64)
        for index, line in enumerate(self.lines):
            matrix[index, list(line)] = 1
        matrix.flags.writeable = False
        return matrix

    def incidence_matrix(self) -> np.ndarray:
        """Lines x points 0/1 matrix"""
        return self.incidence.copy()

    @cached_property
    def _line_lookup(self) -> np.ndarray:
        # [point, pencil] -> first line of that pencil through the point, or -1
        lookup = np.full((self.num_points, len(self.pencils)), -1, dtype=np.int64)
        for q, pencil in enumerate(self.pencils):
            for line in reversed(pencil):
                lookup[list(self.lines[line]), q] = line
        return lookup

    @cached_property
    def _positions(self) -> Dict[int, Tuple[int, int]]:
        positions = {}
        for q, pencil in enumerate(self.pencils):
            for position, line in enumerate(pencil):
                positions.setdefault(line, (q, position))
        return positions

    def line_through(self, point: int, pencil: int) -> int:
        """Index of the line of the given pencil that contains the point"""
        if not 0 <= point < self.num_points:
            raise IndexOutOfRange(f"Point {point} outside 0..{self.num_points - 1}")
        if not 0 <= pencil < len(self.pencils):
            raise IndexOutOfRange(f"Pencil {pencil} outside 0..{len(self.pencils) - 1}")
        line = int(self._line_lookup[point, pencil])
        if line < 0:
            raise InvalidPlane(f"No line of pencil {pencil} passes through point {point}")
        return line

    def lines_through(self, point: int) -> Tuple[int, ...]:
        """One line per pencil through the point, in pencil order"""
        return tuple(self.line_through(point, q) for q in range(len(self.pencils)))

    def position_in_pencil(self, line: int) -> Tuple[int, int]:
        """(pencil index, position within the pencil) for a line index"""
        try:
            return self._positions[line]
        except KeyError:
            raise IndexOutOfRange(f"Line {line} belongs to no pencil") from None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "lines": [list(line) for line in self.lines],
            "pencils": [list(pencil) for pencil in self.pencils],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AffinePlane":
        try:
            return cls(int(data["n"]), tuple(data["lines"]), tuple(data["pencils"]))
        except (KeyError, TypeError) as e:
            raise MalformedIncidence(f"Invalid plane data: {e}") from e


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: Optional[Tuple] = None
    detail: str = ""


@dataclass(frozen=True)
class AxiomReport:
    a1: CheckResult
    a2: CheckResult
    a3: CheckResult
    counting: CheckResult

    @property
    def passed(self) -> bool:
        return self.a1.passed and self.a2.passed and self.a3.passed and self.counting.passed

    def failures(self) -> Dict[str, CheckResult]:
        return {name: check for name, check in self.as_dict().items() if not check.passed}

    def as_dict(self) -> Dict[str, CheckResult]:
        return {"A1": self.a1, "A2": self.a2, "A3": self.a3, "counting": self.counting}


def _check_a1(common: np.ndarray) -> CheckResult:
    off = common.copy()
    np.fill_diagonal(off, 1)
    bad = np.argwhere(np.triu(off != 1))
    if len(bad):
        a, b = (int(v) for v in bad[0])
        return CheckResult(False, (a, b), f"points {a} and {b} share {int(common[a, b])} lines")
    return CheckResult(True)


def _check_a2(incidence: np.ndarray, meets: np.ndarray) -> CheckResult:
    disjoint = (meets == 0).astype(np.int64)
    parallels = disjoint @ incidence
    bad = np.argwhere((incidence == 0) & (parallels != 1))
    if len(bad):
        line, point = (int(v) for v in bad[0])
        return CheckResult(False, (line, point),
                           f"{int(parallels[line, point])} parallels to line {line} through point {point}")
    return CheckResult(True)


def _check_a3(plane: AffinePlane, sizes: np.ndarray) -> CheckResult:
    if len(plane.lines) < 2:
        return CheckResult(False, ("lines", len(plane.lines)), "fewer than two lines")
    short = np.flatnonzero(sizes < 2)
    if len(short):
        line = int(short[0])
        return CheckResult(False, (line,), f"line {line} has {int(sizes[line])} points")
    return CheckResult(True)


def _check_counting(plane: AffinePlane, sizes: np.ndarray) -> CheckResult:
    n = plane.n
    incidence = plane.incidence

    if len(plane.lines) != n * n + n:
        return CheckResult(False, ("lines", len(plane.lines)), f"expected {n * n + n} lines")
    wrong_size = np.flatnonzero(sizes != n)
    if len(wrong_size):
        line = int(wrong_size[0])
        return CheckResult(False, ("line_size", line), f"line {line} has {int(sizes[line])} points")
    degrees = incidence.sum(axis=0)
    wrong_degree = np.flatnonzero(degrees != n + 1)
    if len(wrong_degree):
        point = int(wrong_degree[0])
        return CheckResult(False, ("point_degree", point), f"point {point} is on {int(degrees[point])} lines")

    if len(plane.pencils) != n + 1:
        return CheckResult(False, ("pencils", len(plane.pencils)), f"expected {n + 1} pencils")
    seen: Dict[int, int] = {}
    for q, pencil in enumerate(plane.pencils):
        if len(pencil) != n:
            return CheckResult(False, ("pencil_size", q), f"pencil {q} has {len(pencil)} lines")
        cover = incidence[list(pencil)].sum(axis=0)
        if np.any(cover != 1):
            point = int(np.flatnonzero(cover != 1)[0])
            return CheckResult(False, ("pencil_cover", q, point),
                               f"pencil {q} covers point {point} {int(cover[point])} times")
        for line in pencil:
            if line in seen:
                return CheckResult(False, ("pencil_overlap", seen[line], q),
                                   f"line {line} is in pencils {seen[line]} and {q}")
            seen[line] = q
    return CheckResult(True)


def verify_axioms(plane: AffinePlane) -> AxiomReport:
    """
    Exhaustively check axioms A1-A3 and the derived counts

    A1 uses the point Gram matrix M^T M (common lines per point pair), A2 the
    line Gram matrix M M^T (disjoint lines) pushed through M.

    Args:
        plane: Well-formed incidence structure

    Returns:
        AxiomReport with the first witness of each failing check
    """
    incidence = plane.incidence
    sizes = incidence.sum(axis=1)

    report = AxiomReport(
        a1=_check_a1(incidence.T @ incidence),
        a2=_check_a2(incidence, incidence @ incidence.T),
        a3=_check_a3(plane, sizes),
        counting=_check_counting(plane, sizes),
    )
    if report.passed:
        logger.debug(f"Plane of order {plane.n} satisfies all axioms")
    else:
        logger.info(f"Plane of order {plane.n} fails: {', '.join(report.failures())}")
    return report


def plane_from_mols(mols) -> AffinePlane:
    """
    Plane on the n^2 cells of the squares

    Point i*n + j is cell (i, j). Pencil 0 holds the rows, pencil 1 the
    columns and pencil 2+m the symbol level sets of square m.

    Args:
        mols: MolsSet (or sequence of squares) with exactly n-1 members

    Returns:
        AffinePlane
    """
    if not isinstance(mols, MolsSet):
        squares = tuple(s if isinstance(s, LatinSquare) else LatinSquare(s) for s in mols)
        if not squares:
            raise WrongCount("Need at least one Latin square")
        mols = MolsSet(squares[0].n, squares)

    n = mols.n
    if len(mols) != n - 1:
        raise WrongCount(f"An affine plane of order {n} needs {n - 1} MOLS, got {len(mols)}")

    labels = np.arange(n * n).reshape(n, n)
    groups: List[List[Tuple[int, ...]]] = [
        [tuple(labels[r].tolist()) for r in range(n)],
        [tuple(labels[:, c].tolist()) for c in range(n)],
    ]
    for square in mols:
        groups.append([tuple(labels[square.cells == s].tolist()) for s in range(n)])

    plane = _plane_from_groups(n, groups)
    logger.info(f"Built affine plane of order {n} from {len(mols)} MOLS")
    return plane


def plane_from_field(field: FieldTable) -> AffinePlane:
    """
    The plane GF(n)^2 with point x*n + y

    Pencil 0 holds the verticals x = c, pencil 1 the lines y = c and pencil
    1+m the lines y = m*x + c for m = 1..n-1; lines within a pencil are
    ordered by c.
    """
    n = field.order
    xs = np.arange(n)
    groups = [[tuple((c * n + xs).tolist()) for c in range(n)]]
    for m in range(n):
        mx = field.mul_table[m].astype(np.int64)
        pencil = []
        for c in range(n):
            ys = field.add_table[mx, c].astype(np.int64)
            pencil.append(tuple((xs * n + ys).tolist()))
        groups.append(pencil)

    plane = _plane_from_groups(n, groups)
    logger.info(f"Built affine plane of order {n} from {field!r}")
    return plane


def _plane_from_groups(n: int, groups: Sequence[Sequence[Tuple[int, ...]]]) -> AffinePlane:
    lines: List[Tuple[int, ...]] = []
    pencils = []
    for group in groups:
        pencils.append(tuple(range(len(lines), len(lines) + len(group))))
        lines.extend(group)
    return AffinePlane(n, tuple(lines), tuple(pencils))


def plane_to_mols(plane: AffinePlane, row_pencil: int = 0, col_pencil: int = 1) -> MolsSet:
    """
    Read n-1 MOLS off a plane

    Cell (r, c) is the point where line r of the row pencil meets line c of
    the column pencil; every other pencil, in index order, becomes a square
    whose symbol is the position of the line through that point.

    Args:
        plane: Plane passing verify_axioms
        row_pencil: Pencil giving the row coordinate
        col_pencil: Pencil giving the column coordinate

    Returns:
        MolsSet of n-1 squares
    """
    if row_pencil == col_pencil:
        raise SamePencil(f"Row and column pencil are both {row_pencil}")
    for q in (row_pencil, col_pencil):
        if not 0 <= q < len(plane.pencils):
            raise IndexOutOfRange(f"Pencil {q} outside 0..{len(plane.pencils) - 1}")

    report = verify_axioms(plane)
    if not report.passed:
        raise InvalidPlane(f"Plane fails {', '.join(report.failures())}")

    n = plane.n
    position = {}
    for q, pencil in enumerate(plane.pencils):
        for pos, line in enumerate(pencil):
            position[line] = pos

    grid = np.empty((n, n), dtype=np.int64)
    for point in plane.points:
        r = position[plane.line_through(point, row_pencil)]
        c = position[plane.line_through(point, col_pencil)]
        grid[r, c] = point

    squares = []
    for q in range(len(plane.pencils)):
        if q in (row_pencil, col_pencil):
            continue
        cells = np.empty((n, n), dtype=np.int64)
        for r in range(n):
            for c in range(n):
                cells[r, c] = position[plane.line_through(int(grid[r, c]), q)]
        squares.append(LatinSquare(cells))

    return MolsSet(n, tuple(squares))


def relabel_points(plane: AffinePlane, permutation: Sequence[int]) -> AffinePlane:
    """Isomorphic copy in which old point a is renamed permutation[a]"""
    permutation = [int(v) for v in permutation]
    if sorted(permutation) != list(plane.points):
        raise MalformedIncidence(f"Relabeling must be a permutation of 0..{plane.num_points - 1}")
    lines = tuple(tuple(permutation[p] for p in line) for line in plane.lines)
    return AffinePlane(plane.n, lines, plane.pencils)


def _pencil_sets(plane: AffinePlane) -> FrozenSet[FrozenSet[FrozenSet[int]]]:
    return frozenset(
        frozenset(frozenset(plane.lines[l]) for l in pencil) for pencil in plane.pencils
    )


def same_incidence(first: AffinePlane, second: AffinePlane) -> bool:
    """True when both planes have the same lines and the same pencils as point sets"""
    return (
        first.n == second.n
        and sorted(first.lines) == sorted(second.lines)
        and _pencil_sets(first) == _pencil_sets(second)
    )
