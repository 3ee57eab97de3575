"""
NPT Certifier Service
Projectors and mixtures over a basis of S, NPT_j certificates by witness
and by spectrum, the reversal-conjugated family and a PPT survey of S
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ...core.config import get_settings
from ...core.errors import HypothesisError, RangeError, ShapeError
from ...models.basis_models import GradedBasis
from ...models.report_models import CertReport, Verdict, WitnessSpec
from ...models.tensor_models import Dims
from ..basis.basis_checks import validate_basis
from ..basis.general_onb import build_basis
from ..subspaces.entangled_subspaces import build_T, projector_S
from ..tensor.eigensolver import min_eigenvalue, require_psd
from ..tensor.index_algebra import reversal_operator
from ..tensor.operators import as_hermitian
from ..tensor.partial_transpose import cuts_up_to_complement, partial_transpose, partial_transpose_cut
from .witness import choose_lambda, default_partner, evaluate_quadratic, witness_quadratic

logger = logging.getLogger("ces-kit-certify")


def projector(basis: GradedBasis, validate: bool = True) -> np.ndarray:
    """P_S = sum of |zeta><zeta| over the basis"""
    if validate:
        validate_basis(basis, tol=get_settings().tolerances.basis, raise_on_failure=True)
    v = basis.vectors
    return v.T @ v.conj()


def check_weights(weights: Sequence[float], count: int) -> np.ndarray:
    p = np.asarray(weights, dtype=float).reshape(-1)
    if p.shape[0] != count:
        raise ShapeError(f"Need {count} weights, got {p.shape[0]}", {"expected": count, "got": int(p.shape[0])})
    if np.any(p < 0):
        raise HypothesisError("Weights must be nonnegative", {"negative_positions": np.flatnonzero(p < 0).tolist()})
    if not np.any(p > 0):
        raise HypothesisError("Weights must not all vanish")
    return p


def mixture(basis: GradedBasis, weights: Sequence[float], normalize: bool = False) -> np.ndarray:
    """sum_s p_s |zeta_s><zeta_s|, optionally scaled to trace one"""
    p = check_weights(weights, basis.count)
    if normalize:
        p = p / p.sum()
    v = basis.vectors
    return (v.T * p) @ v.conj()


def range_residual(rho: np.ndarray, dims: Dims) -> float:
    """||P_T rho||_F / ||rho||_F, zero when the range of rho lies in S"""
    norm = float(np.linalg.norm(rho))
    if norm == 0:
        return 0.0
    t_rows = build_T(dims)
    return float(np.linalg.norm(t_rows.conj() @ rho) / norm)


def _verdict(witness_value: Optional[float], min_eig: Optional[float], tol: float) -> Verdict:
    if (witness_value is not None and witness_value < -tol) or (min_eig is not None and min_eig < -tol):
        return Verdict.NPT
    if min_eig is not None:
        return Verdict.PPT_WITHIN_TOLERANCE
    return Verdict.INCONCLUSIVE


def _witness_block(rho: np.ndarray, spec: WitnessSpec, lam: Optional[float]) -> Dict[str, Any]:
    a, b, c = witness_quadratic(rho, spec)
    lam = choose_lambda(a, b, c, spec.dims.k) if lam is None else lam
    return {
        "j": spec.j,
        "j_prime": spec.j_prime,
        "j_double_prime": spec.j_double_prime,
        "degenerate": spec.degenerate,
        "lam": float(lam),
        "a": a,
        "b": b,
        "c": c,
        "value": evaluate_quadratic(a, b, c, lam),
    }


def certify_npt_level(rho, dims: Dims, j: int, j_prime: Optional[int] = None, lam: Optional[float] = None,
                      tol: Optional[float] = None, compute_spectrum: bool = True, use_witness: bool = True,
                      method: Optional[str] = None, seed: Optional[int] = None) -> CertReport:
    """NPT_j verdict from the witness quadratic and/or the minimum eigenvalue of rho^{PT_j}"""
    tol = tol if tol is not None else get_settings().tolerances.verdict
    dims.check_slot(j)
    rho = as_hermitian(rho, dims)
    require_psd(rho, "rho", method=method)

    witness = None
    if use_witness:
        partner = j_prime if j_prime is not None else default_partner(dims, j)
        witness = _witness_block(rho, WitnessSpec(dims=dims, j=j, j_prime=partner), lam)

    min_eig = None
    if compute_spectrum:
        min_eig = min_eigenvalue(partial_transpose(rho, dims, j), method=method)

    verdict = _verdict(witness["value"] if witness else None, min_eig, tol)
    logger.info(f"NPT_{j} on dims {dims}: {verdict.value} (witness={witness and witness['value']}, min_eig={min_eig})")
    return CertReport(dims=list(dims.d), j=j, verdict=verdict, witness=witness, min_eigenvalue=min_eig,
                      tolerances={"verdict": tol}, seed=seed)


def expected_off_diagonal(weights: Sequence[float], k: int) -> float:
    """-p_0 + p_2 (k - 2)/k"""
    p2 = weights[2] if k >= 3 else 0.0
    return -weights[0] + p2 * (k - 2) / k


def certify_mixture(basis: GradedBasis, weights: Sequence[float], tol: Optional[float] = None,
                      compute_spectrum: bool = False, method: Optional[str] = None,
                      seed: Optional[int] = None) -> CertReport:
    """NPT_j of sum_s p_s P_s for the basis built around (j, j')

    The generic witness pairs e_j with e_j'; when its off-diagonal coefficient
    vanishes (k >= 3, (k - 2) p_2 = k p_0) it switches to e_j paired with e_j''.
    """
    tol = tol if tol is not None else get_settings().tolerances.verdict
    dims = basis.dims
    k = dims.k
    j, j_prime = (basis.pair.j, basis.pair.j_prime) if basis.pair else (1, 2)
    p = check_weights(weights, basis.count)
    p0 = p[0]
    p2 = p[2] if k >= 3 else 0.0
    if not p0 + (k - 2) * p2 > 0:
        logger.warning(f"Hypothesis p_0 + (k-2) p_2 > 0 fails for dims {dims}")
        raise HypothesisError(
            "Weights violate p_0 + (k-2) p_2 > 0; the certificate does not apply",
            {"p_0": float(p0), "p_2": float(p2), "k": k},
        )

    rho = mixture(basis, p)
    spec = WitnessSpec(dims=dims, j=j, j_prime=j_prime)
    witness = _witness_block(rho, spec, None)
    notes = [f"expected b = {expected_off_diagonal(p, k):.17g}"]
    if abs(witness["b"]) <= tol and k >= 3:
        j_double_prime = default_partner(dims, j, j_prime)
        spec = WitnessSpec(dims=dims, j=j, j_prime=j_prime, j_double_prime=j_double_prime)
        witness = _witness_block(rho, spec, None)
        notes.append(f"degenerate case: switched to partner slot {j_double_prime}, expected b' = {-2 * p2 / k:.17g}")
        logger.info(f"Degenerate weights on dims {dims}: using xi' over slot {j_double_prime}")

    min_eig = min_eigenvalue(partial_transpose(rho, dims, j), method=method) if compute_spectrum else None
    verdict = _verdict(witness["value"], min_eig, tol)
    return CertReport(dims=list(dims.d), j=j, verdict=verdict, witness=witness, min_eigenvalue=min_eig,
                      tolerances={"verdict": tol}, seed=seed, notes=notes)


def conjugate_by_R(rho, dims: Dims, tol: Optional[float] = None) -> np.ndarray:
    """R rho R for the reversal operator R (maps S onto itself)"""
    tol = tol if tol is not None else get_settings().tolerances.range
    rho = np.asarray(rho, dtype=complex)
    residual = range_residual(rho, dims)
    if residual > tol:
        raise RangeError(f"Range of rho is not inside S (residual {residual:.3e})", {"residual": residual})
    R = reversal_operator(dims)
    return R @ rho @ R


def pair_choices(dims: Dims) -> List[tuple]:
    """Ordered slot pairs admitting the general basis (or (1, 2) for equal bipartite dims)"""
    if dims.k == 2 and dims.d[0] == dims.d[1]:
        return [(1, 2)]
    return [(j, jp) for j in range(1, dims.k + 1) for jp in range(1, dims.k + 1) if j != jp]


def npt_family(dims: Dims, weights: Optional[Sequence[float]] = None, reflect: bool = False,
               tol: Optional[float] = None, method: Optional[str] = None) -> List[Dict[str, Any]]:
    """Certify sum_s p_s P_s for every slot pair, and its R-conjugate when reflect is set"""
    rows = []
    for j, j_prime in pair_choices(dims):
        basis = build_basis(dims, j, j_prime)
        p = np.ones(basis.count) if weights is None else np.asarray(weights, dtype=float)
        report = certify_mixture(basis, p, tol=tol, compute_spectrum=True, method=method)
        rows.append({"pair": [j, j_prime], "reflected": False, "report": report})
        if reflect:
            reflected = conjugate_by_R(mixture(basis, p), dims)
            rows.append({
                "pair": [j, j_prime],
                "reflected": True,
                "report": certify_npt_level(reflected, dims, j, tol=tol, use_witness=False, method=method),
            })
    return rows


def random_state_in_S(dims: Dims, rng: np.random.Generator, rank: Optional[int] = None) -> np.ndarray:
    """Trace-one state whose range lies in S, from Gaussian vectors projected onto S"""
    rank = rank or int(rng.integers(1, dims.M + 1))
    g = rng.standard_normal((dims.D, rank)) + 1j * rng.standard_normal((dims.D, rank))
    vectors = projector_S(dims) @ g
    rho = vectors @ vectors.conj().T
    return rho / np.trace(rho).real


def survey(dims: Dims, samples: int = 20, seed: Optional[int] = None, tol: Optional[float] = None,
           method: Optional[str] = None) -> Dict[str, Any]:
    """Minimum PT eigenvalues of random states supported on S, per slot and per cut

    Reports what was sampled; whether S holds a state PPT at every cut is left open.
    """
    tol = tol if tol is not None else get_settings().tolerances.verdict
    rng = np.random.default_rng(seed)
    basis = build_basis(dims)
    cuts = cuts_up_to_complement(dims)
    rows = []
    for index in range(samples):
        if index % 2 == 0:
            rho = mixture(basis, rng.exponential(size=basis.count), normalize=True)
            kind = "mixture"
        else:
            rho = random_state_in_S(dims, rng)
            kind = "random"
        minima = {
            "+".join(str(s) for s in cut): min_eigenvalue(partial_transpose_cut(rho, dims, cut), method=method)
            for cut in cuts
        }
        rows.append({"sample": index, "kind": kind, "min_eigenvalues": minima,
                     "ppt_all_cuts": all(value >= -tol for value in minima.values())})
    candidates = sum(row["ppt_all_cuts"] for row in rows)
    logger.info(f"Survey on dims {dims}: {candidates}/{samples} samples PPT within tolerance at every cut")
    return {
        "dims": list(dims.d),
        "samples": samples,
        "seed": seed,
        "cuts": ["+".join(str(s) for s in cut) for cut in cuts],
        "ppt_candidates": candidates,
        "rows": rows,
        "note": "sampling only; no claim about PPT states in S",
    }
