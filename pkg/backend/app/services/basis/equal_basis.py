"""
Equal-dimension bipartite basis of S for C^nu x C^nu
Antisymmetric vectors a_{x,y} together with symmetric sum-zero vectors b_p^n
"""

import logging
from typing import List, Tuple

import numpy as np

from ...core.errors import DimsError
from ...models.basis_models import BasisRole, GradedBasis
from ...models.tensor_models import Dims

logger = logging.getLogger("ces-kit-basis")

LevelVector = Tuple[str, np.ndarray]


def _pair_ket(nu: int, terms) -> np.ndarray:
    ket = np.zeros(nu * nu, dtype=complex)
    for (x, y), amplitude in terms:
        ket[x * nu + y] += amplitude
    return ket


def _antisymmetric(nu: int, x: int, y: int) -> np.ndarray:
    return _pair_ket(nu, [((x, y), 1.0), ((y, x), -1.0)]) / np.sqrt(2.0)


def _symmetric_sum(nu: int, pairs, phases) -> np.ndarray:
    terms = []
    for (x, y), phase in zip(pairs, phases):
        terms += [((x, y), phase), ((y, x), phase)]
    return _pair_ket(nu, terms)


def _symmetric_pairs(nu: int, n: int) -> List[Tuple[int, int]]:
    """Pairs (x, n - x) with x < n - x and both coordinates < nu, x ascending"""
    low = max(0, n - nu + 1)
    return [(x, n - x) for x in range(low, (n + 1) // 2)]


def _b_vectors(nu: int, n: int) -> List[LevelVector]:
    pairs = _symmetric_pairs(nu, n)
    count = len(pairs)
    m = np.arange(count)
    out: List[LevelVector] = []
    if n % 2 == 0:
        mid = n // 2
        if n <= nu - 1:
            base = _symmetric_sum(nu, pairs, np.ones(count))
            base[mid * nu + mid] = -n
            out.append((f"b({n},0)", base / np.sqrt(n * (n + 1))))
            for p in range(1, count):
                ket = _symmetric_sum(nu, pairs, np.exp(4j * np.pi * m * p / n))
                out.append((f"b({n},{p})", ket / np.sqrt(n)))
        else:
            half = count
            base = _symmetric_sum(nu, pairs, np.ones(count))
            base[mid * nu + mid] = -2 * half
            out.append((f"b({n},0)", base / np.sqrt(2 * half * (2 * half + 1))))
            for p in range(1, half):
                ket = _symmetric_sum(nu, pairs, np.exp(2j * np.pi * m * p / half))
                out.append((f"b({n},{p})", ket / np.sqrt(2 * half)))
    else:
        if n <= nu - 1:
            for p in range(1, count):
                ket = _symmetric_sum(nu, pairs, np.exp(4j * np.pi * m * p / (n + 1)))
                out.append((f"b({n},{p})", ket / np.sqrt(n + 1)))
        else:
            half = count
            for p in range(1, half):
                ket = _symmetric_sum(nu, pairs, np.exp(2j * np.pi * m * p / half))
                out.append((f"b({n},{p})", ket / np.sqrt(2 * half)))
    return out


def equal_bipartite_level(nu: int, n: int) -> List[LevelVector]:
    """B_n in construction order, as kets on C^nu x C^nu

    Even n: b_0^n, the remaining b_p^n, then the a_{x,y}.
    Odd n = 2g - 1: a_{g-1,g} first, the other a_{x,y}, then the b_p^n.
    """
    pairs = _symmetric_pairs(nu, n)
    antisymmetric = [(f"a({x},{y})", _antisymmetric(nu, x, y)) for x, y in pairs]
    symmetric = _b_vectors(nu, n)
    if n % 2 == 0:
        return symmetric + antisymmetric
    return antisymmetric[::-1][:1] + antisymmetric[:-1] + symmetric


def equal_bipartite_basis(nu: int) -> GradedBasis:
    """The (nu - 1)^2 vectors of B for dims (nu, nu), anchors a_{0,1} and the first level-2 vector"""
    if nu < 2:
        raise DimsError(f"Equal bipartite basis needs nu >= 2, got {nu}", {"nu": nu})
    dims = Dims.of(nu, nu)
    by_level = {n: equal_bipartite_level(nu, n) for n in range(1, 2 * nu - 2)}

    rows, levels, labels, roles = [], [], [], []
    for n, role in ((1, BasisRole.ZETA0), (2, BasisRole.ZETA1)):
        if by_level.get(n):
            label, ket = by_level[n].pop(0)
            rows.append(ket)
            levels.append(n)
            labels.append(label)
            roles.append(role)
    for n in sorted(by_level):
        for label, ket in by_level[n]:
            rows.append(ket)
            levels.append(n)
            labels.append(label)
            roles.append(BasisRole.FILL)

    basis = GradedBasis(
        dims=dims,
        vectors=np.array(rows, dtype=complex).reshape(len(rows), dims.D),
        levels=levels,
        roles=roles,
        labels=labels,
    )
    logger.info(f"Built equal bipartite basis for nu={nu}: {basis.count} vectors")
    return basis
