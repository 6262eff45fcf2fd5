"""
JSON exchange helpers
Complex arrays are written as nested lists of [re, im] pairs, row-major
"""

import json
import logging
from pathlib import Path
from typing import Any, Union

import numpy as np

from errors import MalformedArray, MubGeoError
from hspace import HermitianOp

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def complex_to_json(array) -> Any:
    """Nested lists with every complex entry as [re, im]"""
    array = np.asarray(array, dtype=np.complex128)
    pairs = np.stack([array.real, array.imag], axis=-1)
    return pairs.tolist()


def complex_from_json(data) -> np.ndarray:
    """Inverse of complex_to_json; plain real numbers are accepted as well"""
    array = np.asarray(data, dtype=np.float64)
    if array.ndim >= 1 and array.shape[-1] == 2:
        return array[..., 0] + 1j * array[..., 1]
    return array.astype(np.complex128)


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars and arrays so json.dump accepts them"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return complex_to_json(value)
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    return value


def dumps(data: Any) -> str:
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True)


def save_json(path: PathLike, data: Any) -> Path:
    """Write sorted, indented JSON; parent directories are created"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data) + "\n")
    logger.info(f"Wrote {path}")
    return path


def load_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise MubGeoError(f"File not found: {path}") from None
    except json.JSONDecodeError as e:
        raise MubGeoError(f"Invalid JSON in {path}: {e}") from e


def state_to_dict(state: HermitianOp) -> dict:
    return {"n": state.n, "matrix": complex_to_json(state.matrix)}


def state_from_json(data: Any) -> HermitianOp:
    """
    Density matrix from {"n": ..., "matrix": ...} or a bare matrix

    The matrix must be Hermitian with unit trace; positivity is left to the
    caller.
    """
    matrix_data = data.get("matrix") if isinstance(data, dict) else data
    if matrix_data is None:
        raise MalformedArray("State JSON needs a 'matrix' entry")
    matrix = complex_from_json(matrix_data)
    if isinstance(data, dict) and "n" in data and matrix.shape != (data["n"], data["n"]):
        raise MalformedArray(f"State matrix has shape {matrix.shape}, expected n={data['n']}")
    return HermitianOp(matrix)


def load_state(path: PathLike) -> HermitianOp:
    return state_from_json(load_json(path))
