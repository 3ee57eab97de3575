"""
Entangled Subspaces Service
F = span{v_lambda} = T = span{u_n} and its orthocomplement S, via the
Vandermonde route, the graded sum-zero route and the bipartite
generators w_{x,y} = |x, y+1> - |x+1, y>
"""

import logging
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Union

import numpy as np

from ...core.errors import RangeError, ShapeError
from ...models.subspace_models import GradedSubspace, LevelSummary, VandermondeFamily
from ...models.tensor_models import Dims
from ..tensor.index_algebra import (
    check_level,
    kron,
    level_ranks,
    level_sizes,
    uniform_level_matrix,
)
from ..tensor.operators import as_ket
from . import exact_linalg

logger = logging.getLogger("ces-kit-subspaces")

INFINITY = "inf"
Lambda = Union[complex, float, int, str, None]


class StepGenerator(NamedTuple):
    x: int
    y: int
    level: int
    ket: np.ndarray


def graded_subspace(dims: Dims) -> GradedSubspace:
    sizes = level_sizes(dims)
    levels = [
        LevelSummary(level=n, size=size, sum_zero_dim=size - 1 if 0 < n < dims.N else 0)
        for n, size in enumerate(sizes)
    ]
    return GradedSubspace(dims=dims, levels=levels)


def vandermonde_vector(dims: Dims, lam: complex) -> np.ndarray:
    """v_lambda = (x)_j sum_x lambda^x |x>"""
    lam = complex(lam)
    return kron([[lam ** x for x in range(d)] for d in dims.d])


def default_lambda_grid(dims: Dims, offset: int = 0) -> List[complex]:
    return [complex(n + offset) for n in range(dims.N + 1)]


def vandermonde_family(dims: Dims, lambdas: Optional[Sequence[complex]] = None) -> VandermondeFamily:
    lambdas = list(lambdas) if lambdas is not None else default_lambda_grid(dims)
    if len(lambdas) != dims.N + 1:
        raise RangeError(f"Need N+1 = {dims.N + 1} lambdas, got {len(lambdas)}")
    vectors = np.array([vandermonde_vector(dims, lam) for lam in lambdas])
    return VandermondeFamily(dims=dims, lambdas=[complex(x) for x in lambdas], vectors=vectors)


def orthonormal_rows(rows: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Orthonormal basis (as rows) of the row span, via QR"""
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    q, r = np.linalg.qr(rows.T)
    keep = np.abs(np.diag(r)) > tol * max(1.0, float(np.max(np.abs(r))))
    return q[:, keep].T


def span_residual(ket, rows: np.ndarray) -> float:
    """||x - P x|| / ||x|| for P the projector onto the span of orthonormal rows"""
    x = np.asarray(ket, dtype=complex)
    norm = np.linalg.norm(x)
    if norm == 0:
        raise ShapeError("Residual of the zero vector is undefined")
    coefficients = rows.conj() @ x
    return float(np.linalg.norm(x - rows.T @ coefficients) / norm)


def build_T(dims: Dims) -> np.ndarray:
    """Rows u_n / ||u_n||, n = 0..N"""
    return uniform_level_matrix(dims, normalized=True).astype(complex)


def projector_T(dims: Dims) -> np.ndarray:
    rows = build_T(dims)
    return rows.T @ rows.conj()


def projector_S(dims: Dims) -> np.ndarray:
    """I - sum_n |u_n><u_n| / |I_n|"""
    return np.eye(dims.D, dtype=complex) - projector_T(dims)


def membership_in_S_exact(ket, dims: Dims) -> Optional[Fraction]:
    """sum_n |<u_n|x>|^2 / |I_n| / ||x||^2 as a Fraction, None for non-integer amplitudes"""
    amplitudes = exact_linalg.as_gaussian_integers(as_ket(ket, dims))
    if amplitudes is None:
        return None
    norm2 = exact_linalg.squared_norm(amplitudes)
    if norm2 == 0:
        raise ShapeError("membership_in_S of the zero vector")
    total = Fraction(0)
    for ranks in level_ranks(dims):
        re = sum(amplitudes[r][0] for r in ranks)
        im = sum(amplitudes[r][1] for r in ranks)
        total += Fraction(re * re + im * im, len(ranks))
    return total / norm2


def membership_in_S(ket, dims: Dims) -> float:
    """Relative weight of the T-component; zero iff ket lies in S"""
    exact = membership_in_S_exact(ket, dims)
    if exact is not None:
        return float(exact)
    x = as_ket(ket, dims)
    norm2 = float(np.vdot(x, x).real)
    if norm2 == 0:
        raise ShapeError("membership_in_S of the zero vector")
    overlaps = build_T(dims).conj() @ x
    return float(np.sum(np.abs(overlaps) ** 2) / norm2)


def t_complement_residual(ket, dims: Dims) -> float:
    """Relative residual of ket against T (zero iff ket is in T)"""
    return span_residual(as_ket(ket, dims), build_T(dims))


def is_infinity(lam: Lambda) -> bool:
    return lam is None or (isinstance(lam, str) and lam.lower() in ("inf", "infinity")) or (
        isinstance(lam, (int, float)) and bool(np.isinf(lam))
    )


def product_vector_in_T(dims: Dims, lam: Lambda) -> np.ndarray:
    """z^lambda, with lam = 'inf' (or None / np.inf) giving (x)_r e_{d_r - 1}"""
    if is_infinity(lam):
        return kron([np.eye(d, dtype=complex)[d - 1] for d in dims.d])
    return vandermonde_vector(dims, complex(lam))


def sum_zero_level_generators(dims: Dims, n: int) -> List[np.ndarray]:
    """Integer generators e_i - e_{i0} of S^(n), i0 the first member of I_n"""
    check_level(dims, n)
    ranks = level_ranks(dims)[n]
    generators = []
    for r in ranks[1:]:
        ket = np.zeros(dims.D, dtype=complex)
        ket[r] = 1.0
        ket[ranks[0]] = -1.0
        generators.append(ket)
    return generators


def step_generators(d1: int, d2: int) -> List[StepGenerator]:
    """w_{x,y} for 0 <= x <= d1-2, 0 <= y <= d2-2, each in S^(x+y+1)"""
    dims = Dims.of(d1, d2)
    eye1 = np.eye(d1, dtype=complex)
    eye2 = np.eye(d2, dtype=complex)
    out = []
    for x in range(d1 - 1):
        for y in range(d2 - 1):
            ket = kron([eye1[x], eye2[y + 1]], dims) - kron([eye1[x + 1], eye2[y]], dims)
            out.append(StepGenerator(x=x, y=y, level=x + y + 1, ket=ket))
    return out


def linking_check(d1: int, d2: int) -> Dict[str, object]:
    """Exact comparison of span{w_{x,y}} with the graded sum-zero construction"""
    dims = Dims.of(d1, d2)
    generators = step_generators(d1, d2)
    u_rows = uniform_level_matrix(dims)
    orthogonal = all(
        exact_linalg.inner(exact_linalg.as_gaussian_integers(u), exact_linalg.as_gaussian_integers(g.ket)) == (0, 0)
        for g in generators for u in u_rows
    )
    rank = exact_linalg.gram_rank_exact([g.ket for g in generators])

    per_level = []
    for n in range(1, dims.N):
        mine = [g.ket for g in generators if g.level == n]
        graded = sum_zero_level_generators(dims, n)
        rank_mine = exact_linalg.rank_rational(mine) if mine else 0
        rank_joint = exact_linalg.rank_rational(mine + graded)
        per_level.append({
            "level": n,
            "generators": len(mine),
            "rank": rank_mine,
            "sum_zero_dim": len(graded),
            "same_span": rank_mine == len(graded) == rank_joint,
        })

    report = {
        "dims": list(dims.d),
        "generator_count": len(generators),
        "orthogonal_to_T": orthogonal,
        "gram_rank": rank,
        "M": dims.M,
        "per_level": per_level,
        "linked": orthogonal and rank == dims.M and all(row["same_span"] for row in per_level),
    }
    logger.info(f"Linking check {dims}: rank {rank} vs M {dims.M}, linked={report['linked']}")
    return report
