"""
Index Algebra Service
Lexicographic enumeration of I, level sets I_n, product vectors and the
reversal operator over H = C^{d_1} x ... x C^{d_k}
"""

import itertools
import logging
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from ...core.errors import RangeError, ShapeError
from ...models.tensor_models import Dims, MultiIndex

logger = logging.getLogger("ces-kit-tensor")

_index_cache: LRUCache = LRUCache(maxsize=128)
_level_cache: LRUCache = LRUCache(maxsize=128)


def _dims_key(dims: Dims, *args) -> tuple:
    return hashkey(dims.d, *args)


@cached(_index_cache, key=_dims_key)
def index_table(dims: Dims) -> np.ndarray:
    """D x k integer array; row r is the multi-index of lexicographic rank r"""
    table = np.array(list(itertools.product(*(range(x) for x in dims.d))), dtype=np.int64)
    table.setflags(write=False)
    return table


def level_array(dims: Dims) -> np.ndarray:
    """Level n(i) of every rank"""
    return index_table(dims).sum(axis=1)


def enumerate_indices(dims: Dims) -> List[MultiIndex]:
    """All multi-indices in lexicographic order, slot 1 most significant"""
    return [MultiIndex(i=tuple(int(x) for x in row), rank=r) for r, row in enumerate(index_table(dims))]


def rank_of(dims: Dims, i: Sequence[int]) -> int:
    """Lexicographic rank of a multi-index"""
    if len(i) != dims.k:
        raise ShapeError(f"Multi-index {tuple(i)} has {len(i)} entries, expected {dims.k}")
    if any(not 0 <= x < d for x, d in zip(i, dims.d)):
        raise ShapeError(f"Multi-index {tuple(i)} outside dims {dims.d}")
    return int(np.ravel_multi_index(tuple(i), dims.d))


@cached(_level_cache, key=_dims_key)
def level_ranks(dims: Dims) -> Tuple[Tuple[int, ...], ...]:
    """Ranks belonging to each level, in lexicographic order"""
    levels = level_array(dims)
    return tuple(tuple(int(r) for r in np.flatnonzero(levels == n)) for n in range(dims.N + 1))


def level_sets(dims: Dims) -> Dict[int, List[Tuple[int, ...]]]:
    """Partition of I into I_0, ..., I_N (members lexicographically ordered)"""
    table = index_table(dims)
    return {n: [tuple(int(x) for x in table[r]) for r in ranks] for n, ranks in enumerate(level_ranks(dims))}


def level_sizes(dims: Dims) -> List[int]:
    return [len(ranks) for ranks in level_ranks(dims)]


def level_sizes_from_polynomial(dims: Dims) -> List[int]:
    """Coefficients of prod_r (1 + x + ... + x^{d_r - 1}), lowest degree first"""
    coefficients = reduce(np.convolve, (np.ones(d, dtype=np.int64) for d in dims.d))
    return [int(c) for c in coefficients]


def level_size_closed_form(d1: int, d2: int, n: int) -> int:
    """Bipartite |I_n| by the piecewise formula (argument order irrelevant)"""
    small, large = sorted((d1, d2))
    if n < 0 or n > small + large - 2:
        return 0
    if n <= small - 1:
        return n + 1
    if n <= large - 1:
        return small
    return small + large - 1 - n


def check_level(dims: Dims, n: int) -> None:
    if not 0 <= n <= dims.N:
        raise RangeError(f"Level {n} outside 0..{dims.N}", {"level": n, "N": dims.N})


def basis_ket(dims: Dims, i: Sequence[int]) -> np.ndarray:
    """Standard basis vector e_i"""
    ket = np.zeros(dims.D, dtype=complex)
    ket[rank_of(dims, i)] = 1.0
    return ket


def kron(factors: Sequence[Sequence[complex]], dims: Optional[Dims] = None) -> np.ndarray:
    """Product vector x_1 (x) ... (x) x_k in lexicographic order"""
    arrays = [np.asarray(f, dtype=complex).reshape(-1) for f in factors]
    if dims is not None:
        if len(arrays) != dims.k:
            raise ShapeError(f"Got {len(arrays)} factors for k = {dims.k}")
        for r, (a, d) in enumerate(zip(arrays, dims.d), start=1):
            if a.shape[0] != d:
                raise ShapeError(f"Factor {r} has length {a.shape[0]}, slot dimension is {d}",
                                 {"slot": r, "length": int(a.shape[0]), "d": d})
    return reduce(np.kron, arrays)


def uniform_level_vector(dims: Dims, n: int) -> np.ndarray:
    """u_n: 0/1 indicator of I_n"""
    check_level(dims, n)
    ket = np.zeros(dims.D, dtype=complex)
    ket[list(level_ranks(dims)[n])] = 1.0
    return ket


def uniform_level_matrix(dims: Dims, normalized: bool = False) -> np.ndarray:
    """(N+1) x D matrix whose rows are u_0, ..., u_N"""
    levels = level_array(dims)
    rows = (levels[None, :] == np.arange(dims.N + 1)[:, None]).astype(float)
    if normalized:
        rows = rows / np.sqrt(rows.sum(axis=1, keepdims=True))
    return rows


def reversal_permutation(dims: Dims) -> np.ndarray:
    """perm[r] = rank of gamma(i) where gamma_r(p) = d_r - 1 - p"""
    reversed_table = np.array(dims.d, dtype=np.int64)[None, :] - 1 - index_table(dims)
    return np.ravel_multi_index(tuple(reversed_table.T), dims.d)


def reversal_operator(dims: Dims) -> np.ndarray:
    """Permutation matrix R with R e_i = e_{gamma(i)}"""
    perm = reversal_permutation(dims)
    op = np.zeros((dims.D, dims.D), dtype=complex)
    op[perm, np.arange(dims.D)] = 1.0
    return op
