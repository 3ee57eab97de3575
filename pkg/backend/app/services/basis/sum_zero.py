"""
Sum-zero completion
Orthonormal bases of Z = {sum_s c_s y_s : sum_s c_s = 0} in C^d, from
scratch or extending a partial basis C1 of the sum-zero vectors on y_0..y_r
"""

from typing import Optional

import numpy as np

from ...core.errors import HypothesisError, RangeError
from ..tensor.operators import orthonormality_error

PRECONDITION_TOL = 1e-10


def _fourier_block(d: int, start: int) -> np.ndarray:
    """Rows exp(2 pi i (s - start) p / m) / sqrt(m) on y_start..y_{d-1}, p = 1..m-1"""
    m = d - start
    rows = np.zeros((max(m - 1, 0), d), dtype=complex)
    s = np.arange(m)
    for p in range(1, m):
        rows[p - 1, start:] = np.exp(2j * np.pi * s * p / m) / np.sqrt(m)
    return rows


def _check_partial_basis(d: int, r: int, partial: np.ndarray, require_single_anchor: bool) -> None:
    if partial.shape != (r, d):
        raise HypothesisError(f"C1 must hold r = {r} vectors of length {d}, got shape {partial.shape}")
    if orthonormality_error(partial) > PRECONDITION_TOL:
        raise HypothesisError("C1 is not orthonormal")
    if np.max(np.abs(partial[:, r + 1:]), initial=0.0) > PRECONDITION_TOL:
        raise HypothesisError(f"C1 must be supported on y_0..y_{r}")
    if np.max(np.abs(partial.sum(axis=1)), initial=0.0) > PRECONDITION_TOL:
        raise HypothesisError("C1 vectors must have coefficient sum zero")
    if require_single_anchor and r > 1 and np.max(np.abs(partial[1:, 0])) > PRECONDITION_TOL:
        raise HypothesisError("y_0 may occur only in the first vector of C1")


def complete_sum_zero_basis(d: int, r: Optional[int] = None, partial: Optional[np.ndarray] = None,
                            require_single_anchor: bool = True) -> np.ndarray:
    """(d - 1) x d array of orthonormal sum-zero rows

    Without C1: (y0 - y1)/sqrt2, ((d-2)(y0 + y1) - 2v)/sqrt(2d(d-2)) with v the
    sum of y_2..y_{d-1}, then a Fourier basis on y_2..y_{d-1}.
    With C1 spanning the sum-zero vectors on y_0..y_r: C1, then
    ((d-1-r) eta - (r+1) v)/sqrt(d(r+1)(d-r-1)) with eta = y_0 + ... + y_r,
    then a Fourier basis on y_{r+1}..y_{d-1}.
    """
    if d < 2:
        raise RangeError(f"Sum-zero completion needs d >= 2, got {d}")
    if partial is None:
        if r is not None and r != 1:
            raise RangeError("r is only meaningful together with a partial basis C1")
        if d == 2:
            return np.array([[1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
        first = np.zeros((1, d), dtype=complex)
        first[0, 0], first[0, 1] = 1.0, -1.0
        partial = first / np.sqrt(2.0)
        r = 1
    else:
        partial = np.atleast_2d(np.asarray(partial, dtype=complex))
        if r is None:
            r = partial.shape[0]
        if not 1 <= r <= d - 2:
            raise RangeError(f"r must satisfy 1 <= r <= d - 2 = {d - 2}, got {r}")
        _check_partial_basis(d, r, partial, require_single_anchor)

    bridge = np.zeros((1, d), dtype=complex)
    bridge[0, : r + 1] = d - 1 - r
    bridge[0, r + 1:] = -(r + 1)
    bridge /= np.sqrt(d * (r + 1) * (d - r - 1))
    return np.vstack([partial, bridge, _fourier_block(d, r + 1)])
