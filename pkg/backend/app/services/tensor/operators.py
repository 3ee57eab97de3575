"""
Ket and Hermitian operator helpers
Kets are 1-D complex arrays of length D, operators D x D complex arrays,
both in lexicographic multi-index order
"""

from typing import Optional, Sequence

import numpy as np

from ...core.config import get_settings
from ...core.errors import NotHermitianError, ShapeError
from ...models.tensor_models import Dims


def as_ket(vector, dims: Dims) -> np.ndarray:
    ket = np.asarray(vector, dtype=complex).reshape(-1)
    if ket.shape[0] != dims.D:
        raise ShapeError(f"Ket has {ket.shape[0]} amplitudes, D = {dims.D}", {"length": int(ket.shape[0]), "D": dims.D})
    if not np.all(np.isfinite(ket)):
        raise ShapeError("Ket has non-finite amplitudes")
    return ket


def is_unit(ket: np.ndarray, tol: Optional[float] = None) -> bool:
    tol = tol if tol is not None else get_settings().tolerances.unit_norm
    return abs(np.linalg.norm(ket) - 1.0) <= tol


def hermiticity_error(op: np.ndarray) -> float:
    return float(np.max(np.abs(op - op.conj().T))) if op.size else 0.0


def as_operator(matrix, dims: Optional[Dims] = None) -> np.ndarray:
    op = np.asarray(matrix, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ShapeError(f"Operator must be square, got shape {op.shape}")
    if dims is not None and op.shape[0] != dims.D:
        raise ShapeError(f"Operator is {op.shape[0]}x{op.shape[0]}, D = {dims.D}", {"size": int(op.shape[0]), "D": dims.D})
    return op


def as_hermitian(matrix, dims: Optional[Dims] = None, tol: Optional[float] = None) -> np.ndarray:
    """Validate the Hermitian flag (entrywise tolerance, settings default)"""
    tol = tol if tol is not None else get_settings().tolerances.hermitian
    op = as_operator(matrix, dims)
    err = hermiticity_error(op)
    if err > tol:
        raise NotHermitianError(f"max|A - A^dag| = {err:.3e} exceeds {tol:.1e}", {"error": err, "tol": tol})
    return op


def rank_one(ket: np.ndarray) -> np.ndarray:
    """|v><v|"""
    return np.outer(ket, ket.conj())


def projector_from_rows(rows: np.ndarray) -> np.ndarray:
    """Sum of |v><v| over the rows of an orthonormal family"""
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    return rows.T @ rows.conj()


def orthonormality_error(rows: np.ndarray) -> float:
    """max |<v_a|v_b> - delta_ab| over the rows"""
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    gram = rows.conj() @ rows.T
    return float(np.max(np.abs(gram - np.eye(rows.shape[0])))) if rows.shape[0] else 0.0


def embed_local(op: np.ndarray, dims: Dims, j: int) -> np.ndarray:
    """Operator acting as op on slot j and as identity elsewhere"""
    dims.check_slot(j)
    factors: Sequence[np.ndarray] = [
        np.asarray(op, dtype=complex) if r == j else np.eye(d, dtype=complex)
        for r, d in enumerate(dims.d, start=1)
    ]
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out
