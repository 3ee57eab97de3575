"""
Seesaw product-state optimisation
Maximises <x_1 ... x_k| P |x_1 ... x_k> by cyclic per-slot top-eigenvector updates
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from ...core.config import get_settings
from ...models.report_models import SeesawResult
from ...models.tensor_models import Dims
from ..tensor.eigensolver import require_psd, top_eigenvector
from ..tensor.index_algebra import kron
from ..tensor.operators import as_hermitian

logger = logging.getLogger("ces-kit-certify")

MONOTONE_SLACK = 1e-10
MAX_OPERATOR_NORM = 1.0 + 1e-9


def random_unit_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    """Uniform on the unit sphere of C^d"""
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def contracted_slot_matrix(tensor: np.ndarray, factors: List[np.ndarray], r: int) -> np.ndarray:
    """d_r x d_r matrix left after contracting P with every factor except slot r"""
    k = len(factors)
    args: list = [tensor, list(range(2 * k))]
    for s, x in enumerate(factors):
        if s == r:
            continue
        args += [x.conj(), [s], x, [k + s]]
    args.append([r, k + r])
    return np.einsum(*args)


def product_objective(tensor: np.ndarray, factors: List[np.ndarray]) -> float:
    m = contracted_slot_matrix(tensor, factors, 0)
    x = factors[0]
    return float(np.vdot(x, m @ x).real)


def _single_run(tensor: np.ndarray, dims: Dims, rng: np.random.Generator, iterations: int,
                gain_tolerance: float, method: Optional[str]) -> Tuple[float, List[np.ndarray], bool]:
    factors = [random_unit_vector(rng, d) for d in dims.d]
    value = product_objective(tensor, factors)
    monotone = True
    for _ in range(iterations):
        start = value
        for r in range(dims.k):
            m = contracted_slot_matrix(tensor, factors, r)
            top, vector = top_eigenvector(0.5 * (m + m.conj().T), method=method)
            if top < value - MONOTONE_SLACK:
                monotone = False
                logger.warning(f"Seesaw objective decreased from {value:.15g} to {top:.15g}")
            factors[r] = vector / np.linalg.norm(vector)
            value = top
        if value - start < gain_tolerance:
            break
    return value, factors, monotone


def seesaw_max_product_overlap(P, dims: Dims, restarts: Optional[int] = None, iterations: Optional[int] = None,
                               gain_tolerance: Optional[float] = None, seed: Optional[int] = None,
                               method: Optional[str] = None) -> SeesawResult:
    """Best product-state overlap over independent seeded restarts (ties keep the earliest)"""
    defaults = get_settings().seesaw
    restarts = restarts or defaults.restarts
    iterations = iterations or defaults.iterations
    gain_tolerance = gain_tolerance if gain_tolerance is not None else defaults.gain_tolerance

    P = as_hermitian(P, dims)
    require_psd(P, "seesaw operator", max_norm=MAX_OPERATOR_NORM, method=method)
    tensor = P.reshape(dims.d + dims.d)
    children = np.random.SeedSequence(seed).spawn(restarts)

    best_value, best_factors, best_restart = -np.inf, None, -1
    monotone = True
    for index, child in enumerate(children):
        value, factors, ok = _single_run(tensor, dims, np.random.default_rng(child), iterations, gain_tolerance, method)
        monotone = monotone and ok
        logger.debug(f"Seesaw restart {index}: value {value:.12f}")
        if value > best_value:
            best_value, best_factors, best_restart = value, factors, index

    logger.info(f"Seesaw on dims {dims}: best value {best_value:.12f} over {restarts} restarts")
    return SeesawResult(
        value=float(best_value),
        best_restart=best_restart,
        restarts=restarts,
        iterations=iterations,
        monotone=monotone,
        seed=seed,
        factors=[[[float(z.real), float(z.imag)] for z in x] for x in best_factors],
    )


def product_state(result: SeesawResult) -> np.ndarray:
    """Ket of the maximising product state"""
    return kron([np.array([complex(re, im) for re, im in factor]) for factor in result.factors])
