"""
UPB Toolkit Service
Validation of unextendible product bases, the bound-entangled state built
from their complement, PPT checks over all cuts and a search for UPBs in F
"""

import itertools
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from ...core.config import get_settings
from ...core.errors import FixtureError, RangeError
from ...models.tensor_models import Dims
from ...models.upb_models import ProductFamily
from ..certification.seesaw import seesaw_max_product_overlap
from ..subspaces.entangled_subspaces import Lambda, is_infinity, product_vector_in_T
from ..tensor.eigensolver import hermitian_eigenvalues
from ..tensor.index_algebra import kron
from ..tensor.operators import as_hermitian, is_unit, orthonormality_error, projector_from_rows
from ..tensor.partial_transpose import cuts_up_to_complement, partial_transpose_cut

logger = logging.getLogger("ces-kit-upb")

FIXTURE_DIR = Path(__file__).resolve().parent.parent.parent / "data" / "fixtures"
BOUND_ENTANGLED_LABEL = "bound-entangled (numerical certificate)"
ORTHONORMAL_TOL = 1e-10
DEFAULT_F_GRID: List[Lambda] = [0, 1, -1, 1j, -1j, "inf"]


def load_product_family(path: Union[str, Path]) -> ProductFamily:
    """Read a JSON fixture {dims, vectors: [per-slot factor lists]}"""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except FileNotFoundError as e:
        raise FixtureError(f"Fixture not found: {path}") from e
    except json.JSONDecodeError as e:
        raise FixtureError(f"Fixture {path} is not valid JSON: {e}") from e
    if not isinstance(raw, dict) or "dims" not in raw or "vectors" not in raw:
        raise FixtureError(f"Fixture {path} must hold 'dims' and 'vectors'")
    family = ProductFamily(
        dims=raw["dims"],
        members=raw["vectors"],
        name=raw.get("name", path.stem),
        provenance=raw.get("provenance", ""),
    )
    logger.info(f"Loaded product family {family.name} with {family.size} members on dims {family.dims}")
    return family


def tiles_family() -> ProductFamily:
    return load_product_family(FIXTURE_DIR / "tiles.json")


def family_kets(family: ProductFamily) -> np.ndarray:
    """size x D array of the product vectors"""
    return np.array([kron(member, family.dims) for member in family.members])


def family_orthonormality(family: ProductFamily) -> float:
    return orthonormality_error(family_kets(family))


def _require_orthonormal(family: ProductFamily, tol: float) -> np.ndarray:
    for s, member in enumerate(family.members):
        for r, factor in enumerate(member, start=1):
            if not is_unit(factor):
                raise FixtureError(
                    f"Product family {family.name}: member {s}, slot {r} is not a unit vector",
                    {"member": s, "slot": r, "norm": float(np.linalg.norm(factor))},
                )
    kets = family_kets(family)
    error = orthonormality_error(kets)
    if error > tol:
        raise FixtureError(f"Product family {family.name} is not orthonormal (error {error:.3e})", {"error": error})
    return kets


def validate_upb(family: ProductFamily, restarts: Optional[int] = None, seed: Optional[int] = None,
                 certificate_tol: Optional[float] = None, orthonormal_tol: float = ORTHONORMAL_TOL,
                 method: Optional[str] = None) -> Dict[str, Any]:
    """Numerical unextendability: best product overlap with the orthocomplement"""
    certificate_tol = certificate_tol if certificate_tol is not None else get_settings().tolerances.upb_certificate
    dims = family.dims
    kets = _require_orthonormal(family, orthonormal_tol)
    report: Dict[str, Any] = {
        "name": family.name,
        "dims": list(dims.d),
        "size": family.size,
        "orthonormality_error": orthonormality_error(kets),
    }
    if family.size >= dims.D:
        report.update(span_full=True, unextendable=False, best_value=None,
                      note="span is full: orthocomplement is {0}, not a UPB candidate")
        return report

    complement = np.eye(dims.D, dtype=complex) - projector_from_rows(kets)
    result = seesaw_max_product_overlap(complement, dims, restarts=restarts, seed=seed, method=method)
    report.update(
        span_full=False,
        best_value=result.value,
        certificate_threshold=1.0 - certificate_tol,
        unextendable=result.value <= 1.0 - certificate_tol,
        maximizer=result.factors,
        seed=seed,
    )
    logger.info(f"UPB validation {family.name}: best product overlap {result.value:.6f}, unextendable={report['unextendable']}")
    return report


def bound_entangled_state(family: ProductFamily, orthonormal_tol: float = ORTHONORMAL_TOL) -> np.ndarray:
    """(I - sum_s |psi_s><psi_s|) / (D - d)"""
    dims = family.dims
    kets = _require_orthonormal(family, orthonormal_tol)
    if family.size >= dims.D:
        raise RangeError(f"Family of {family.size} vectors spans all of C^{dims.D}; no state is left")
    return (np.eye(dims.D, dtype=complex) - projector_from_rows(kets)) / (dims.D - family.size)


def ppt_all_cuts(rho, dims: Dims, tol: Optional[float] = None, method: Optional[str] = None) -> Dict[str, Any]:
    """Minimum eigenvalue of rho^{PT(E)} for one E per complementary pair"""
    tol = tol if tol is not None else get_settings().tolerances.verdict
    rho = as_hermitian(rho, dims)
    cuts = {}
    for cut in cuts_up_to_complement(dims):
        values = hermitian_eigenvalues(partial_transpose_cut(rho, dims, cut), method=method)
        cuts["+".join(str(s) for s in cut)] = float(values[0])
    ppt = all(value >= -tol for value in cuts.values())
    return {"dims": list(dims.d), "min_eigenvalues": cuts, "ppt": ppt, "tol": tol}


def upb_pipeline(family: ProductFamily, restarts: Optional[int] = None, seed: Optional[int] = None,
                 method: Optional[str] = None) -> Dict[str, Any]:
    """validate_upb -> bound_entangled_state -> ppt_all_cuts, with the bound-entanglement label when all agree"""
    validation = validate_upb(family, restarts=restarts, seed=seed, method=method)
    report: Dict[str, Any] = {"validation": validation}
    if validation["span_full"]:
        report["verdict"] = "not a UPB candidate"
        return report
    rho = bound_entangled_state(family)
    values = hermitian_eigenvalues(rho, method=method)
    report["state"] = {
        "trace": float(np.trace(rho).real),
        "rank": int(np.sum(values > 1e-8)),
        "min_eigenvalue": float(values[0]),
    }
    report["ppt"] = ppt_all_cuts(rho, family.dims, method=method)
    if validation["unextendable"] and report["ppt"]["ppt"]:
        report["verdict"] = BOUND_ENTANGLED_LABEL
    elif validation["unextendable"]:
        report["verdict"] = "unextendable, state not PPT within tolerance"
    else:
        report["verdict"] = "extendable"
    return report


def z_inner_closed_form(dims: Dims, lam: Lambda, mu: Lambda) -> complex:
    """<z^lam|z^mu> = prod_r sum_x (conj(lam) mu)^x, with z^inf = (x)_r e_{d_r - 1}"""
    if is_infinity(lam) and is_infinity(mu):
        return 1.0 + 0j
    if is_infinity(lam):
        return complex(np.prod([complex(mu) ** (d - 1) for d in dims.d]))
    if is_infinity(mu):
        return complex(np.prod([np.conj(complex(lam)) ** (d - 1) for d in dims.d]))
    t = np.conj(complex(lam)) * complex(mu)
    return complex(np.prod([sum(t ** x for x in range(d)) for d in dims.d]))


def _grid_family(dims: Dims, members: Sequence[Lambda]) -> ProductFamily:
    factors = []
    for lam in members:
        if is_infinity(lam):
            member = [np.eye(d, dtype=complex)[d - 1] for d in dims.d]
        else:
            member = [np.array([complex(lam) ** x for x in range(d)]) for d in dims.d]
        factors.append([f / np.linalg.norm(f) for f in member])
    return ProductFamily(dims=dims, members=factors, name="F-search:" + ",".join(str(m) for m in members))


def upb_search_in_F(dims: Dims, grid: Optional[Sequence[Lambda]] = None, restarts: Optional[int] = None,
                    seed: Optional[int] = None, tol: float = 1e-10, method: Optional[str] = None) -> Dict[str, Any]:
    """Largest mutually orthogonal z^lam families over a lambda grid, each tested for unextendability"""
    grid = list(grid) if grid is not None else list(DEFAULT_F_GRID)
    gram = np.array([[z_inner_closed_form(dims, a, b) for b in grid] for a in grid])
    direct = np.array([[np.vdot(product_vector_in_T(dims, a), product_vector_in_T(dims, b)) for b in grid] for a in grid])
    closed_form_error = float(np.max(np.abs(gram - direct)))

    norms = np.sqrt(np.abs(np.diag(gram)))
    orthogonal = np.abs(gram) / np.outer(norms, norms) <= tol
    largest: List[tuple] = []
    for size in range(len(grid), 0, -1):
        found = [c for c in itertools.combinations(range(len(grid)), size)
                 if all(orthogonal[a, b] for a, b in itertools.combinations(c, 2))]
        if found:
            largest = found
            break

    families = []
    for combo in largest:
        members = [grid[s] for s in combo]
        validation = validate_upb(_grid_family(dims, members), restarts=restarts, seed=seed, method=method)
        families.append({"lambdas": [str(m) for m in members], "unextendable": validation["unextendable"],
                         "best_value": validation["best_value"], "span_full": validation["span_full"]})

    report = {
        "dims": list(dims.d),
        "grid": [str(g) for g in grid],
        "closed_form_error": closed_form_error,
        "self_overlaps_positive": bool(np.all(np.diag(gram).real > 0)),
        "largest_orthogonal_size": len(largest[0]) if largest else 0,
        "families": families,
        "upb_found": any(f["unextendable"] for f in families),
    }
    logger.info(f"F search on dims {dims}: largest orthogonal family {report['largest_orthogonal_size']}, upb_found={report['upb_found']}")
    return report
