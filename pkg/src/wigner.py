"""
Discrete Wigner Function
Quasi-probabilities W_alpha = (1/n) Tr(A_alpha rho) on the points of an
affine plane, the inverse map, and line probabilities
"""

import logging
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd

from errors import DimensionMismatch, MissingPlane, NotPositive
from hspace import SPECTRAL_TOL, HermitianOp, as_op
from polytope import DSimplex

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class WignerTable:
    """
    Wigner values indexed by plane point label

    Point i*n + j sits at grid cell (i, j) of the plane's first two pencils
    for planes built by this package.
    """

    n: int
    values: np.ndarray
    dsimplex: Optional[DSimplex] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).ravel()
        if values.shape[0] != self.n * self.n:
            raise DimensionMismatch(f"Wigner table for n={self.n} needs {self.n * self.n} values")
        if self.dsimplex is not None and self.dsimplex.n != self.n:
            raise DimensionMismatch(f"D-simplex has n={self.dsimplex.n}, table has n={self.n}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def total(self) -> float:
        return float(self.values.sum())

    def min_value(self) -> float:
        return float(self.values.min())

    def negativity(self) -> float:
        """Sum of the magnitudes of the negative entries"""
        return float(-self.values[self.values < 0].sum())

    def grid(self, row_pencil: int = 0, col_pencil: int = 1) -> np.ndarray:
        """
        n x n view with cell (r, c) at the meeting point of line r of the row
        pencil and line c of the column pencil
        """
        if self.dsimplex is None:
            return self.values.reshape(self.n, self.n).copy()
        plane = self.dsimplex.plane
        grid = np.empty((self.n, self.n))
        for point in plane.points:
            r = plane.position_in_pencil(plane.line_through(point, row_pencil))[1]
            c = plane.position_in_pencil(plane.line_through(point, col_pencil))[1]
            grid[r, c] = self.values[point]
        return grid

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "plane": self.dsimplex.plane.to_dict() if self.dsimplex is not None else None,
            "values": self.values.reshape(self.n, self.n).tolist(),
        }


def wigner_from_state(rho, dsimplex: DSimplex, check_positive: bool = True,
                      tolerance: float = SPECTRAL_TOL) -> WignerTable:
    """
    W_alpha = (1/n) Tr(A_alpha rho)

    Args:
        rho: Unit-trace Hermitian matrix of dimension n
        dsimplex: Point-face operators on the plane
        check_positive: Warn with NotPositive when rho has a negative eigenvalue
        tolerance: Eigenvalues above -tolerance count as non-negative

    Returns:
        WignerTable attached to the D-simplex
    """
    rho = as_op(rho)
    if rho.n != dsimplex.n:
        raise DimensionMismatch(f"State has dimension {rho.n}, D-simplex has n={dsimplex.n}")

    if check_positive:
        min_eig = rho.min_eigenvalue()
        if min_eig < -tolerance:
            logger.warning(f"State has eigenvalue {min_eig:.3e}; computing the Wigner function anyway")
            warnings.warn(NotPositive(f"State has eigenvalue {min_eig:.3e}"))

    values = np.real(np.einsum("aij,ji->a", dsimplex.matrices(), rho.matrix)) / dsimplex.n
    return WignerTable(dsimplex.n, values, dsimplex)


def state_from_wigner(table: WignerTable) -> HermitianOp:
    """
    rho = sum_alpha W_alpha A_alpha

    Exact because Tr A_alpha A_beta = n delta_alpha_beta. The result has unit
    trace only when the table sums to 1.
    """
    if table.dsimplex is None:
        raise MissingPlane("Wigner table carries no D-simplex to reconstruct from")
    matrix = np.einsum("a,aij->ij", table.values, table.dsimplex.matrices())
    return HermitianOp(matrix, unit_trace=False)


@dataclass(frozen=True, eq=False)
class LineProbabilities:
    """p_omega indexed [pencil, position of the line within the pencil]"""

    dsimplex: DSimplex
    values: np.ndarray

    def pencil_sums(self) -> np.ndarray:
        return self.values.sum(axis=1)

    def min_value(self) -> float:
        return float(self.values.min())

    def to_frame(self) -> pd.DataFrame:
        plane = self.dsimplex.plane
        rows = []
        for q, pencil in enumerate(plane.pencils):
            for position, line in enumerate(pencil):
                basis, vector = self.dsimplex.assignment.corner_of(q, position)
                rows.append({
                    "pencil": q,
                    "line": line,
                    "basis": basis,
                    "vector": vector,
                    "probability": float(self.values[q, position]),
                })
        return pd.DataFrame(rows, columns=["pencil", "line", "basis", "vector", "probability"])

    def to_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
        logger.info(f"Wrote line probabilities to {path}")
        return path


def line_probabilities(table: WignerTable) -> LineProbabilities:
    """p_omega = sum of W over the points of line omega"""
    if table.dsimplex is None:
        raise MissingPlane("Wigner table carries no plane")
    plane = table.dsimplex.plane
    values = np.array([
        [table.values[list(plane.lines[line])].sum() for line in pencil]
        for pencil in plane.pencils
    ])
    return LineProbabilities(table.dsimplex, values)


def direct_line_probabilities(rho, dsimplex: DSimplex) -> LineProbabilities:
    """Tr P_omega rho with P_omega the corner paired with line omega"""
    rho = as_op(rho)
    if rho.n != dsimplex.n:
        raise DimensionMismatch(f"State has dimension {rho.n}, D-simplex has n={dsimplex.n}")
    plane = dsimplex.plane
    values = np.array([
        [dsimplex.line_projector(line).trace_product(rho) for line in pencil]
        for pencil in plane.pencils
    ])
    return LineProbabilities(dsimplex, values)
