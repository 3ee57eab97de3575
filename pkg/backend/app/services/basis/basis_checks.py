"""
Basis invariant checks
Validity (count, orthonormality, orthogonality to T, graded support),
summand census of the embedded diagonal and adjacent indices, and FLIP symmetry
"""

import logging
from typing import Any, Dict, List, Set, Tuple

import numpy as np

from ...core.errors import BasisInvariantError
from ...models.basis_models import GradedBasis
from ...models.tensor_models import PairEmbedding
from ..subspaces.entangled_subspaces import build_T
from ..tensor.index_algebra import level_array, level_size_closed_form, level_sizes, rank_of
from ..tensor.operators import orthonormality_error

logger = logging.getLogger("ces-kit-basis")

OCCURS_THRESHOLD = 1e-12


def validate_basis(basis: GradedBasis, tol: float = 1e-10, raise_on_failure: bool = False) -> Dict[str, Any]:
    """Run every basis invariant; optionally raise on the first failing one"""
    dims = basis.dims
    vectors = basis.vectors
    levels = level_array(dims)

    t_overlap = float(np.max(np.abs(build_T(dims).conj() @ vectors.T), initial=0.0))
    support_error = 0.0
    for row, n in zip(vectors, basis.levels):
        outside = np.abs(row[levels != n])
        support_error = max(support_error, float(np.max(outside, initial=0.0)))

    checks = {
        "count": {"value": basis.count, "expected": dims.M, "passed": basis.count == dims.M},
        "orthonormality": {"value": orthonormality_error(vectors), "tol": tol},
        "orthogonal_to_T": {"value": t_overlap, "tol": tol},
        "graded_support": {"value": support_error, "tol": tol},
    }
    for name in ("orthonormality", "orthogonal_to_T", "graded_support"):
        checks[name]["passed"] = checks[name]["value"] <= tol

    failed = [name for name, check in checks.items() if not check["passed"]]
    report = {"passed": not failed, "failed": failed, "checks": checks}
    if failed:
        logger.warning(f"Basis for dims {dims} failed checks: {failed}")
        if raise_on_failure:
            raise BasisInvariantError(f"Basis invariant '{failed[0]}' failed", failed[0], checks[failed[0]])
    return report


def occurrences(basis: GradedBasis, rank: int, threshold: float = OCCURS_THRESHOLD) -> Set[int]:
    """Positions of the basis vectors with nonzero amplitude at a given rank"""
    return {int(s) for s in np.flatnonzero(np.abs(basis.vectors[:, rank]) > threshold)}


def measured_census(basis: GradedBasis, threshold: float = OCCURS_THRESHOLD) -> Dict[Tuple[int, int], int]:
    """Occurrence counts of ~(x, x') for the diagonal and adjacent embedded indices"""
    pair = basis.pair
    if pair is None:
        raise ValueError("Census of the general basis needs a slot pair")
    out = {}
    for x, y in _census_keys(pair.nu):
        out[(x, y)] = len(occurrences(basis, rank_of(basis.dims, pair.index(x, y)), threshold))
    return out


def adjacent_supports_agree(basis: GradedBasis, threshold: float = OCCURS_THRESHOLD) -> Dict[int, bool]:
    """For each g, whether ~(g-1, g) and ~(g, g-1) occur in the same vectors"""
    pair = basis.pair
    result = {}
    for g in range(1, pair.nu):
        left = occurrences(basis, rank_of(basis.dims, pair.index(g - 1, g)), threshold)
        right = occurrences(basis, rank_of(basis.dims, pair.index(g, g - 1)), threshold)
        result[g] = left == right
    return result


def expected_census(pair: PairEmbedding) -> Dict[Tuple[int, int], int]:
    """Occurrence counts the construction produces, from (dims, j, j') alone"""
    nu = pair.nu
    sizes = level_sizes(pair.dims)

    def has_outer(n: int) -> bool:
        return sizes[n] > level_size_closed_form(nu, nu, n)

    expected = {(0, 0): 0}
    for g in range(1, nu - 1):
        expected[(g, g)] = 1 + int(has_outer(2 * g))
    expected[(nu - 1, nu - 1)] = 1 if sizes[2 * nu - 2] == 2 else 2
    for g in range(1, nu):
        n = 2 * g - 1
        b_count = g - 1 if n <= nu - 1 else nu - g - 1
        expected[(g - 1, g)] = expected[(g, g - 1)] = 1 + b_count + int(has_outer(n))
    return expected


def census_report(basis: GradedBasis) -> Dict[str, Any]:
    measured = measured_census(basis)
    expected = expected_census(basis.pair)
    agree = adjacent_supports_agree(basis)
    mismatches = [f"~{key}: {measured[key]} != {value}" for key, value in expected.items() if measured[key] != value]
    return {
        "passed": not mismatches and all(agree.values()),
        "never_occurs_00": measured[(0, 0)] == 0,
        "adjacent_same_vectors": all(agree.values()),
        "mismatches": mismatches,
        "counts": {f"{x},{y}": count for (x, y), count in sorted(measured.items())},
    }


def equal_basis_diagonal_counts(basis: GradedBasis, threshold: float = OCCURS_THRESHOLD) -> Dict[int, int]:
    """For the equal bipartite basis: how many vectors contain |g g>"""
    nu = basis.dims.d[0]
    return {g: len(occurrences(basis, g * nu + g, threshold)) for g in range(nu)}


def flip_operator(nu: int) -> np.ndarray:
    """SWAP on C^nu x C^nu"""
    perm = np.arange(nu * nu).reshape(nu, nu).T.reshape(-1)
    flip = np.zeros((nu * nu, nu * nu), dtype=complex)
    flip[perm, np.arange(nu * nu)] = 1.0
    return flip


def flip_symmetry_errors(basis: GradedBasis) -> Dict[str, float]:
    """max ||F a + a|| over antisymmetric and max ||F b - b|| over symmetric vectors"""
    flip = flip_operator(basis.dims.d[0])
    errors = {"antisymmetric": 0.0, "symmetric": 0.0}
    for row, label in zip(basis.vectors, basis.labels):
        flipped = flip @ row
        if label.startswith("a("):
            errors["antisymmetric"] = max(errors["antisymmetric"], float(np.linalg.norm(flipped + row)))
        elif label.startswith("b("):
            errors["symmetric"] = max(errors["symmetric"], float(np.linalg.norm(flipped - row)))
    return errors


def _census_keys(nu: int) -> List[Tuple[int, int]]:
    keys = [(g, g) for g in range(nu)]
    keys += [(g - 1, g) for g in range(1, nu)] + [(g, g - 1) for g in range(1, nu)]
    return keys
