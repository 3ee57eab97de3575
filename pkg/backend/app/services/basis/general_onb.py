"""
General orthonormal basis of S
Embeds the equal bipartite basis of C^nu x C^nu at slots (j, j') and
completes every level with the sum-zero procedures
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from ...core.errors import DimsError, ShapeError
from ...models.basis_models import BasisRole, GradedBasis
from ...models.tensor_models import Dims, PairEmbedding
from ..tensor.index_algebra import level_ranks, rank_of
from .equal_basis import equal_bipartite_basis, equal_bipartite_level
from .sum_zero import complete_sum_zero_basis

logger = logging.getLogger("ces-kit-basis")


class LevelPlan:
    """Ordered members y_0, y_1, ... of one level and the vectors built on them"""

    def __init__(self, level: int, ranks: List[int]):
        self.level = level
        self.ranks = ranks
        self.rows: List[np.ndarray] = []
        self.labels: List[str] = []
        self.bridge_position: Optional[int] = None


def embed_pair(ket, dims: Dims, j: int, j_prime: int) -> np.ndarray:
    """Transport a ket on C^nu x C^nu (or C^{d_j} x C^{d_j'}) through the ~ embedding"""
    pair = PairEmbedding(dims=dims, j=j, j_prime=j_prime)
    return _embed(np.asarray(ket, dtype=complex).reshape(-1), pair)


def _embed(ket: np.ndarray, pair: PairEmbedding) -> np.ndarray:
    nu = pair.nu
    if ket.shape[0] == nu * nu:
        width = nu
    else:
        width = pair.dims.slot_dim(pair.j_prime)
        if ket.shape[0] != pair.dims.slot_dim(pair.j) * width:
            raise ShapeError(f"Bipartite ket of length {ket.shape[0]} does not fit slots ({pair.j}, {pair.j_prime})")
    out = np.zeros(pair.dims.D, dtype=complex)
    for r in np.flatnonzero(ket):
        x, x_prime = divmod(int(r), width)
        if x >= nu or x_prime >= nu:
            raise ShapeError(f"Amplitude at ({x}, {x_prime}) lies outside the nu x nu block", {"nu": nu})
        out[rank_of(pair.dims, pair.index(x, x_prime))] = ket[r]
    return out


def _pair_ranks(pair: PairEmbedding, n: int) -> List[Tuple[Tuple[int, int], int]]:
    """((x, x'), rank) for embedded pairs at level n, x ascending"""
    nu = pair.nu
    return [
        ((x, n - x), rank_of(pair.dims, pair.index(x, n - x)))
        for x in range(max(0, n - nu + 1), min(n, nu - 1) + 1)
    ]


def _plan_embedded_level(pair: PairEmbedding, n: int) -> LevelPlan:
    """1 <= n <= 2 nu - 3: B_n embedded, then the bridge vector and Fourier rows on I_n^2"""
    embedded = _pair_ranks(pair, n)
    lookup = dict(embedded)
    g = (n + 1) // 2
    if n % 2 == 0:
        head = [lookup[(g, g)]]
    else:
        head = [lookup[(g - 1, g)], lookup[(g, g - 1)]]
    inner = head + sorted(r for _, r in embedded if r not in head)
    outer = [r for r in level_ranks(pair.dims)[n] if r not in lookup.values()]
    plan = LevelPlan(n, inner + outer)
    position = {r: s for s, r in enumerate(plan.ranks)}

    block = []
    for label, ket in equal_bipartite_level(pair.nu, n):
        full = _embed(ket, pair)
        row = np.zeros(len(plan.ranks), dtype=complex)
        for r in np.flatnonzero(full):
            row[position[int(r)]] = full[r]
        block.append(row)
        plan.labels.append(f"~{label}")

    if outer:
        rows = complete_sum_zero_basis(len(plan.ranks), len(block), np.array(block), require_single_anchor=False)
        plan.bridge_position = len(block)
        plan.labels += ["zr"] + [f"f({p})" for p in range(1, len(outer))]
    else:
        rows = np.array(block)
    plan.rows = list(rows)
    return plan


def _plan_scratch_level(pair: PairEmbedding, n: int) -> LevelPlan:
    """Levels without an embedded block: sum-zero basis from scratch"""
    ranks = list(level_ranks(pair.dims)[n])
    if n == 2 * pair.nu - 2:
        anchor = rank_of(pair.dims, pair.index(pair.nu - 1, pair.nu - 1))
        ranks = [anchor] + sorted((r for r in ranks if r != anchor), reverse=True)
    plan = LevelPlan(n, ranks)
    if len(ranks) < 2:
        return plan
    plan.rows = list(complete_sum_zero_basis(len(ranks)))
    plan.labels = ["z0"] + (["zr"] if len(ranks) > 2 else []) + [f"f({p})" for p in range(1, len(ranks) - 2)]
    plan.bridge_position = 1 if len(ranks) > 2 else None
    return plan


def _to_full(plan: LevelPlan, row: np.ndarray, D: int) -> np.ndarray:
    full = np.zeros(D, dtype=complex)
    full[plan.ranks] = row
    return full


def general_onb(dims: Dims, j: int, j_prime: int) -> GradedBasis:
    """Orthonormal basis C of S built around the slot pair (j, j')"""
    pair = PairEmbedding(dims=dims, j=j, j_prime=j_prime)
    if (dims.k - 2) + (pair.nu_prime - pair.nu) <= 0:
        raise DimsError(
            f"dims {dims} with pair ({j}, {j_prime}) is the equal bipartite case; use the equal bipartite basis",
            {"dims": list(dims.d), "pair": [j, j_prime]},
        )

    plans: Dict[int, LevelPlan] = {}
    for n in range(1, dims.N):
        if n <= 2 * pair.nu - 3:
            plans[n] = _plan_embedded_level(pair, n)
        else:
            plans[n] = _plan_scratch_level(pair, n)

    anchor_slots = [(1, 0, BasisRole.ZETA0), (2, 0, BasisRole.ZETA1)]
    if dims.k >= 3:
        anchor_slots += [(1, plans[1].bridge_position, BasisRole.ZETA2),
                         (2, plans[2].bridge_position, BasisRole.ZETA3)]

    taken = set()
    rows, levels, roles, labels = [], [], [], []
    for n, s, role in anchor_slots:
        plan = plans[n]
        rows.append(_to_full(plan, plan.rows[s], dims.D))
        levels.append(n)
        roles.append(role)
        labels.append(plan.labels[s])
        taken.add((n, s))
    for n in sorted(plans):
        plan = plans[n]
        for s, row in enumerate(plan.rows):
            if (n, s) in taken:
                continue
            rows.append(_to_full(plan, row, dims.D))
            levels.append(n)
            roles.append(BasisRole.FILL)
            labels.append(plan.labels[s])

    basis = GradedBasis(
        dims=dims,
        pair=pair,
        vectors=np.array(rows, dtype=complex),
        levels=levels,
        roles=roles,
        labels=labels,
    )
    logger.info(f"Built basis for dims {dims}, pair ({j}, {j_prime}): {basis.count} vectors, anchors {basis.anchors}")
    return basis


def build_basis(dims: Dims, j: int = 1, j_prime: int = 2) -> GradedBasis:
    """Equal bipartite basis when dims = (nu, nu), the general construction otherwise"""
    if dims.k == 2 and dims.d[0] == dims.d[1]:
        return equal_bipartite_basis(dims.d[0])
    return general_onb(dims, j, j_prime)


def basis_with_rotated_fill(basis: GradedBasis, seed: Optional[int] = None) -> GradedBasis:
    """Same anchors; inside every level the fill vectors are mixed by a random unitary"""
    rng = np.random.default_rng(seed)
    vectors = basis.vectors.copy()
    for n in sorted(set(basis.levels)):
        positions = [s for s, (level, role) in enumerate(zip(basis.levels, basis.roles))
                     if level == n and role == BasisRole.FILL]
        if len(positions) < 2:
            continue
        m = len(positions)
        z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        q, r = np.linalg.qr(z)
        unitary = q * (np.diag(r) / np.abs(np.diag(r)))
        vectors[positions] = unitary @ vectors[positions]
    return basis.model_copy(update={
        "vectors": vectors,
        "labels": [label if role != BasisRole.FILL else f"rot:{label}" for label, role in zip(basis.labels, basis.roles)],
    })
