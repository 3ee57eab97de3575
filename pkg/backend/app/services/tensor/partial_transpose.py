"""
Partial transpose over one slot or a bipartite cut
PT_j moves the entry at sigma_j(p, q) to (p, q): a pure index permutation
"""

import itertools
from typing import Iterable, Tuple

import numpy as np

from ...core.errors import SlotError
from ...models.tensor_models import Dims
from .operators import as_operator


def partial_transpose(op, dims: Dims, j: int) -> np.ndarray:
    """PT_j of a D x D operator (slots are 1-based)"""
    dims.check_slot(j)
    op = as_operator(op, dims)
    k = dims.k
    tensor = op.reshape(dims.d + dims.d)
    tensor = np.swapaxes(tensor, j - 1, k + j - 1)
    return np.ascontiguousarray(tensor).reshape(dims.D, dims.D)


def normalize_cut(dims: Dims, cut: Iterable[int]) -> Tuple[int, ...]:
    """Sorted tuple of slots of a proper nonempty cut E"""
    slots = tuple(sorted(set(int(j) for j in cut)))
    for j in slots:
        dims.check_slot(j)
    if not slots:
        raise SlotError("Cut E must be nonempty")
    if len(slots) == dims.k:
        raise SlotError("Cut E must be a proper subset of the slots", {"cut": list(slots)})
    return slots


def partial_transpose_cut(op, dims: Dims, cut: Iterable[int]) -> np.ndarray:
    """Composition of PT_j over every j in E"""
    slots = normalize_cut(dims, cut)
    out = as_operator(op, dims)
    for j in slots:
        out = partial_transpose(out, dims, j)
    return out


def cuts_up_to_complement(dims: Dims) -> Tuple[Tuple[int, ...], ...]:
    """One representative per {E, E'} pair: the side not containing slot k"""
    others = range(1, dims.k)
    return tuple(
        combo for size in range(1, dims.k) for combo in itertools.combinations(others, size)
    )
