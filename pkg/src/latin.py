"""
Latin Squares and Mutually Orthogonal Latin Squares
Latin property, orthogonality, field MOLS and the transversal mate search
"""

import logging
import re
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from errors import MalformedArray, NotOrthogonal, OrderMismatch, OrderTooLarge, WrongCount
from gf import FieldTable

logger = logging.getLogger(__name__)

DEFAULT_MATE_ORDER_CAP = 10
DEFAULT_REDUCED_ORDER_CAP = 6

Cell = Tuple[int, int]


def _as_cells(square) -> np.ndarray:
    """Validate shape and symbol range, return an int64 copy"""
    if isinstance(square, LatinSquare):
        return square.cells

    rows = [list(row) for row in square]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise MalformedArray("Latin square must be a non-empty n x n array")
    if not all(isinstance(v, (int, np.integer)) and not isinstance(v, bool) for row in rows for v in row):
        raise MalformedArray("Latin square symbols must be integers")

    cells = np.array(rows, dtype=np.int64)
    if cells.min() < 0 or cells.max() >= n:
        raise MalformedArray(f"Symbols must lie in 0..{n - 1}")
    return cells


class LatinReport(NamedTuple):
    is_latin: bool
    violation: Optional[Tuple[str, int, int]]  # (row|column, index, repeated symbol)


class OrthogonalityReport(NamedTuple):
    orthogonal: bool
    witness: Optional[Tuple[Cell, Cell]]  # two cells carrying the same symbol pair


def is_latin(square) -> LatinReport:
    """
    Check that every symbol occurs once per row and once per column

    Args:
        square: n x n array-like of symbols in 0..n-1, or a LatinSquare

    Returns:
        LatinReport with the first violation in row-then-column scan order
    """
    cells = _as_cells(square)
    for kind, lines in (("row", cells), ("column", cells.T)):
        for index, line in enumerate(lines.tolist()):
            seen = set()
            for symbol in line:
                if symbol in seen:
                    return LatinReport(False, (kind, index, symbol))
                seen.add(symbol)
    return LatinReport(True, None)


@dataclass(frozen=True, eq=False)
class LatinSquare:
    """n x n Latin square with symbols 0..n-1"""

    cells: np.ndarray

    def __post_init__(self):
        cells = _as_cells(self.cells)
        if cells is self.cells:
            cells = cells.copy()
        report = is_latin(cells)
        if not report.is_latin:
            kind, index, symbol = report.violation
            raise MalformedArray(f"Not a Latin square: symbol {symbol} repeated in {kind} {index}")
        cells.flags.writeable = False
        object.__setattr__(self, "cells", cells)

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.cells.tolist())

    def __eq__(self, other) -> bool:
        return isinstance(other, LatinSquare) and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash(self.rows())

    def __repr__(self) -> str:
        return f"LatinSquare({self.cells.tolist()})"

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows())

    @classmethod
    def from_text(cls, text: str) -> "LatinSquare":
        rows = [line.split() for line in text.strip().splitlines() if line.strip()]
        try:
            return cls([[int(v) for v in row] for row in rows])
        except ValueError as e:
            raise MalformedArray(f"Could not parse Latin square: {e}") from e


def _square(square) -> LatinSquare:
    return square if isinstance(square, LatinSquare) else LatinSquare(square)


def cyclic_square(n: int, shift: int = 0) -> LatinSquare:
    """Cayley table of Z_n, L(i, j) = (i + j + shift) mod n"""
    i = np.arange(n)
    return LatinSquare((i[:, None] + i[None, :] + shift) % n)


def isotope(square: LatinSquare, rows: Sequence[int], cols: Sequence[int],
            symbols: Sequence[int]) -> LatinSquare:
    """Apply row, column and symbol permutations: new[i][j] = symbols[old[rows[i]][cols[j]]]"""
    cells = square.cells[np.ix_(list(rows), list(cols))]
    return LatinSquare(np.asarray(symbols)[cells])


def relabel_symbols(square: LatinSquare) -> LatinSquare:
    """Rename symbols so that the first row reads 0, 1, ..., n-1"""
    position = np.empty(square.n, dtype=np.int64)
    position[square.cells[0]] = np.arange(square.n)
    return LatinSquare(position[square.cells])


def are_orthogonal(first, second) -> OrthogonalityReport:
    """
    Check whether (i, j) -> (A_ij, B_ij) is injective

    Uses a flat n^2 occupancy table keyed by A_ij * n + B_ij.

    Args:
        first: Latin square A
        second: Latin square B of the same order

    Returns:
        OrthogonalityReport with two cells sharing a symbol pair on failure
    """
    a, b = _square(first), _square(second)
    if a.n != b.n:
        raise OrderMismatch(f"Cannot compare squares of order {a.n} and {b.n}")

    n = a.n
    first_seen = [-1] * (n * n)
    keys = (a.cells * n + b.cells).ravel().tolist()
    for cell, key in enumerate(keys):
        previous = first_seen[key]
        if previous >= 0:
            return OrthogonalityReport(False, (divmod(previous, n), divmod(cell, n)))
        first_seen[key] = cell
    return OrthogonalityReport(True, None)


@dataclass(frozen=True)
class MolsSet:
    """Family of pairwise orthogonal Latin squares of order n"""

    n: int
    squares: Tuple[LatinSquare, ...]

    def __post_init__(self):
        squares = tuple(_square(s) for s in self.squares)
        object.__setattr__(self, "squares", squares)

        for square in squares:
            if square.n != self.n:
                raise OrderMismatch(f"Square of order {square.n} in a MOLS set of order {self.n}")
        if len(squares) > max(self.n - 1, 0):
            raise WrongCount(f"At most {self.n - 1} MOLS exist for order {self.n}, got {len(squares)}")

        for i in range(len(squares)):
            for j in range(i + 1, len(squares)):
                report = are_orthogonal(squares[i], squares[j])
                if not report.orthogonal:
                    raise NotOrthogonal(
                        f"Squares {i} and {j} repeat a symbol pair at cells {report.witness}")

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)

    def __getitem__(self, index: int) -> LatinSquare:
        return self.squares[index]

    def to_text(self) -> str:
        return "\n\n".join(square.to_text() for square in self.squares) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MolsSet":
        squares = squares_from_text(text)
        return cls(squares[0].n, squares)


def squares_from_text(text: str) -> Tuple[LatinSquare, ...]:
    """Parse blank-line separated squares without checking mutual orthogonality"""
    blocks = [block for block in re.split(r"\n\s*\n", text.strip()) if block.strip()]
    if not blocks:
        raise MalformedArray("No Latin squares found in text")
    return tuple(LatinSquare.from_text(block) for block in blocks)


def standardize_mols(mols: MolsSet) -> MolsSet:
    """
    Normal form under symbol relabeling and row permutation

    Each square's symbols are renamed by its first row, then all squares have
    their rows sorted by the first column of square 0.
    """
    if not mols.squares:
        return mols
    relabeled = [relabel_symbols(square) for square in mols.squares]
    order = np.argsort(relabeled[0].cells[:, 0], kind="stable")
    return MolsSet(mols.n, tuple(LatinSquare(square.cells[order]) for square in relabeled))


def mols_from_field(field: FieldTable) -> MolsSet:
    """
    The n-1 squares L_m(i, j) = m*i + j over GF(n), m != 0

    Args:
        field: FieldTable of order n >= 2

    Returns:
        MolsSet of n-1 squares (validated on construction)
    """
    n = field.order
    j = np.arange(n)
    squares = []
    for m in range(1, n):
        mi = field.mul_table[m].astype(np.int64)
        squares.append(LatinSquare(field.add_table[mi[:, None], j[None, :]].astype(np.int64)))

    mols = MolsSet(n, tuple(squares))
    logger.info(f"Built {len(mols)} MOLS of order {n} from {field!r}")
    return mols


def find_transversals(square) -> List[Tuple[int, ...]]:
    """
    All transversals in lexicographic order

    A transversal is returned as the column chosen in each row; it meets every
    row, column and symbol exactly once.
    """
    rows = _square(square).cells.tolist()
    n = len(rows)
    found: List[Tuple[int, ...]] = []
    path: List[int] = []

    def extend(row: int, used_cols: int, used_symbols: int):
        if row == n:
            found.append(tuple(path))
            return
        for col in range(n):
            if used_cols >> col & 1:
                continue
            symbol = rows[row][col]
            if used_symbols >> symbol & 1:
                continue
            path.append(col)
            extend(row + 1, used_cols | 1 << col, used_symbols | 1 << symbol)
            path.pop()

    extend(0, 0, 0)
    return found


def count_transversals(square) -> int:
    return len(find_transversals(square))


@dataclass(frozen=True)
class MateSearchResult:
    mate: Optional[LatinSquare]
    exhaustive: bool
    transversals: int
    nodes: int

    @property
    def found(self) -> bool:
        return self.mate is not None


def find_orthogonal_mate(square, max_order: int = DEFAULT_MATE_ORDER_CAP,
                         max_nodes: Optional[int] = None) -> MateSearchResult:
    """
    Search for an orthogonal mate by partitioning the cells into n disjoint transversals

    Transversals are grouped by their row-0 column c; the mate carries symbol c on
    the transversal chosen for group c. Groups are filled in ascending c and
    transversals tried in lexicographic order, so the first mate found is
    deterministic.

    Args:
        square: Latin square A
        max_order: Largest order accepted
        max_nodes: Optional backtracking budget; exceeding it clears 'exhaustive'

    Returns:
        MateSearchResult
    """
    square = _square(square)
    n = square.n
    if n > max_order:
        raise OrderTooLarge(f"Mate search capped at order {max_order}, got {n}")

    transversals = find_transversals(square)
    if len(transversals) < n:
        return MateSearchResult(None, True, len(transversals), 0)

    groups: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for index, transversal in enumerate(transversals):
        mask = 0
        for row, col in enumerate(transversal):
            mask |= 1 << (row * n + col)
        groups[transversal[0]].append((index, mask))

    chosen = [0] * n
    nodes = 0
    truncated = False

    def place(group: int, used: int) -> bool:
        nonlocal nodes, truncated
        if group == n:
            return True
        for index, mask in groups[group]:
            if mask & used:
                continue
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                truncated = True
                return False
            chosen[group] = index
            if place(group + 1, used | mask):
                return True
            if truncated:
                return False
        return False

    if not place(0, 0):
        return MateSearchResult(None, not truncated, len(transversals), nodes)

    mate = np.empty((n, n), dtype=np.int64)
    for symbol, index in enumerate(chosen):
        for row, col in enumerate(transversals[index]):
            mate[row, col] = symbol
    return MateSearchResult(LatinSquare(mate), True, len(transversals), nodes)


def enumerate_reduced_squares(n: int, max_order: int = DEFAULT_REDUCED_ORDER_CAP) -> Iterator[LatinSquare]:
    """
    Yield every reduced Latin square of order n (first row and column 0..n-1)

    Cells are filled row-major with symbols tried in ascending order, so squares
    come out in lexicographic cell order.

    Args:
        n: Order
        max_order: Largest order accepted

    Yields:
        LatinSquare
    """
    if n < 1:
        raise MalformedArray(f"Order must be >= 1, got {n}")
    if n > max_order:
        raise OrderTooLarge(f"Reduced-square enumeration capped at order {max_order}, got {n}")

    full = (1 << n) - 1
    grid = [[-1] * n for _ in range(n)]
    grid[0] = list(range(n))
    for i in range(n):
        grid[i][0] = i

    row_used = [full] + [1 << i for i in range(1, n)]
    col_used = [full] + [1 << j for j in range(1, n)]
    free_cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def fill(position: int) -> Iterator[LatinSquare]:
        if position == len(free_cells):
            yield LatinSquare([row[:] for row in grid])
            return
        i, j = free_cells[position]
        for symbol in range(n):
            bit = 1 << symbol
            if row_used[i] & bit or col_used[j] & bit:
                continue
            grid[i][j] = symbol
            row_used[i] |= bit
            col_used[j] |= bit
            yield from fill(position + 1)
            row_used[i] ^= bit
            col_used[j] ^= bit
        grid[i][j] = -1

    yield from fill(0)
