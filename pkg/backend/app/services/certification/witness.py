"""
Witness algebra
<xi| rho^{PT_j} |xi> = a lam^2 + b lam + c for xi = lam |p0> + |q0>
"""

from typing import Optional, Tuple

import numpy as np

from ...models.report_models import WitnessSpec
from ...models.tensor_models import Dims
from ..tensor.index_algebra import basis_ket, rank_of
from ..tensor.partial_transpose import partial_transpose


def default_partner(dims: Dims, *exclude: int) -> int:
    """Smallest slot not in exclude"""
    return next(s for s in range(1, dims.k + 1) if s not in exclude)


def witness_quadratic(rho: np.ndarray, spec: WitnessSpec) -> Tuple[float, float, float]:
    """(a, b, c) = (rho[p0,p0], rho[p1,q1] + rho[q1,p1], rho[q0,q0])"""
    dims = spec.dims
    p0, q0 = rank_of(dims, spec.p0), rank_of(dims, spec.q0)
    p1, q1 = rank_of(dims, spec.p1), rank_of(dims, spec.q1)
    a = float(rho[p0, p0].real)
    b = float((rho[p1, q1] + rho[q1, p1]).real)
    c = float(rho[q0, q0].real)
    return a, b, c


def witness_vector(spec: WitnessSpec, lam: Optional[float] = None) -> np.ndarray:
    lam = spec.lam if lam is None else lam
    return lam * basis_ket(spec.dims, spec.p0) + basis_ket(spec.dims, spec.q0)


def witness_value_direct(rho: np.ndarray, spec: WitnessSpec, lam: Optional[float] = None) -> float:
    """<xi| rho^{PT_j} |xi> evaluated through the partial transpose itself"""
    xi = witness_vector(spec, lam)
    return float(np.vdot(xi, partial_transpose(rho, spec.dims, spec.j) @ xi).real)


def evaluate_quadratic(a: float, b: float, c: float, lam: float) -> float:
    return a * lam * lam + b * lam + c


def choose_lambda(a: float, b: float, c: float, k: int, tol: float = 1e-12) -> float:
    """lam making a lam^2 + b lam + c as negative as the coefficients allow

    With a > tol the vertex -b / 2a; otherwise -sign(b) max(k, (c + 1)/|b|),
    which gives value at most -1 when a vanishes.
    """
    if a > tol:
        vertex = -b / (2.0 * a)
        return vertex if vertex != 0 else float(k)
    if abs(b) <= tol:
        return float(k)
    return -float(np.sign(b)) * max(float(k), (c + 1.0) / abs(b))
