"""
Hermitian Eigensolver
Cyclic complex Jacobi rotations, with numpy.linalg.eigh as a selectable fast path
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ...core.config import get_settings
from ...core.errors import ConvergenceError, HypothesisError
from .operators import as_hermitian

logger = logging.getLogger("ces-kit-tensor")


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def _rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """2x2 unitary W with W^dag [[app, apq], [conj(apq), aqq]] W diagonal"""
    modulus = abs(apq)
    phase = np.exp(-1j * np.angle(apq))
    tau = (aqq - app) / (2.0 * modulus)
    if tau == 0.0:
        t = 1.0
    else:
        t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    return np.array([[c, s], [-s * phase, c * phase]], dtype=complex)


def jacobi_eigh(matrix: np.ndarray, threshold: float = 1e-13,
                max_sweeps: int = 100) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix"""
    a = np.array(matrix, dtype=complex)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 0:
        return np.zeros(0), v

    scale = max(1.0, float(np.linalg.norm(a)))
    target = threshold * scale
    for sweep in range(1, max_sweeps + 1):
        off = _off_norm(a)
        if off <= target:
            logger.debug(f"Jacobi converged after {sweep - 1} sweeps (n={n}, off={off:.2e})")
            break
        skip = target / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= skip:
                    continue
                w = _rotation(a[p, p].real, a[q, q].real, a[p, q])
                pq = [p, q]
                a[:, pq] = a[:, pq] @ w
                a[pq, :] = w.conj().T @ a[pq, :]
                v[:, pq] = v[:, pq] @ w
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        off = _off_norm(a)
        if off > target:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3e})",
                {"max_sweeps": max_sweeps, "off_diagonal": off},
            )

    values = np.diag(a).real
    order = np.argsort(values, kind="stable")
    return values[order], v[:, order]


def hermitian_eigh(op, method: Optional[str] = None, threshold: Optional[float] = None,
                   max_sweeps: Optional[int] = None,
                   hermitian_tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Validated eigendecomposition; settings fill in anything not given"""
    op = as_hermitian(op, tol=hermitian_tol)
    solver = get_settings().eigensolver
    method = method or solver.method
    if method == "numpy":
        values, vectors = np.linalg.eigh(0.5 * (op + op.conj().T))
        return values.real, vectors
    return jacobi_eigh(
        op,
        threshold=threshold if threshold is not None else solver.threshold,
        max_sweeps=max_sweeps if max_sweeps is not None else solver.max_sweeps,
    )


def hermitian_eigenvalues(op, method: Optional[str] = None, **kwargs) -> np.ndarray:
    """Ascending real eigenvalues"""
    values, _ = hermitian_eigh(op, method=method, **kwargs)
    return values


def min_eigenvalue(op, method: Optional[str] = None, **kwargs) -> float:
    return float(hermitian_eigenvalues(op, method=method, **kwargs)[0])


def top_eigenvector(op, method: Optional[str] = None) -> Tuple[float, np.ndarray]:
    """Largest eigenvalue and a unit eigenvector for it"""
    values, vectors = hermitian_eigh(op, method=method)
    return float(values[-1]), vectors[:, -1]


def require_psd(op, what: str = "operator", tol: Optional[float] = None, max_norm: Optional[float] = None,
                method: Optional[str] = None) -> np.ndarray:
    """Eigenvalues of op, raising HypothesisError when op is not PSD (or exceeds max_norm)"""
    tol = tol if tol is not None else get_settings().tolerances.psd
    values = hermitian_eigenvalues(op, method=method)
    if values.size and values[0] < -tol:
        raise HypothesisError(f"{what} is not positive semidefinite (min eigenvalue {values[0]:.3e})",
                              {"min_eigenvalue": float(values[0]), "tol": tol})
    if max_norm is not None and values.size and values[-1] > max_norm:
        raise HypothesisError(f"{what} has norm {values[-1]:.12g} above {max_norm:.12g}",
                              {"max_eigenvalue": float(values[-1]), "max_norm": max_norm})
    return values
