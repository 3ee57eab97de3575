"""
Command layer shared by the CLI and the tool server
Each command takes a RunConfig and returns a CommandResult with the exit code
"""

import json
import logging
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.config import get_settings
from ..core.errors import EXIT_CERTIFICATION_FAILED, EXIT_OK, CESKitError, HypothesisError
from ..models.config_models import RunConfig
from ..models.tensor_models import Dims
from ..services.basis.basis_checks import census_report, flip_symmetry_errors, validate_basis
from ..services.basis.general_onb import basis_with_rotated_fill, build_basis
from ..services.certification.certification_service import CertificationService
from ..services.certification.npt_certifier import pair_choices
from ..services.certification.seesaw import seesaw_max_product_overlap
from ..services.reporting.report_writer import build_report, dumps_report, to_csv, to_plain
from ..services.subspaces.entangled_subspaces import graded_subspace, projector_S, projector_T
from ..services.tensor.index_algebra import level_sets, level_size_closed_form, level_sizes_from_polynomial
from ..services.upb.upb_service import UPBService

logger = logging.getLogger("ces-kit-cli")


class CommandResult:
    """Results of one command plus its flat CSV rows and exit code"""

    def __init__(self, command: str, config: RunConfig, results: List[Any], rows: List[Dict[str, Any]],
                 exit_code: int, elapsed: float):
        self.command = command
        self.config = config
        self.results = results
        self.rows = rows
        self.exit_code = exit_code
        self.elapsed = elapsed

    def document(self) -> Dict[str, Any]:
        settings = get_settings()
        return build_report(
            settings.report.schema_tag,
            self.command,
            self.config.to_report_dict(),
            to_plain(self.results),
            self.elapsed if self.config.timing else None,
        )

    def render(self) -> str:
        digits = get_settings().report.float_digits
        if self.config.output_format == "csv":
            return to_csv(self.rows, digits)
        return dumps_report(self.document(), digits)


def _pairs(config: RunConfig, dims: Dims) -> List[Tuple[int, int]]:
    if config.pair == "all":
        return pair_choices(dims)
    j, j_prime = config.pair
    dims.check_slot(j)
    dims.check_slot(j_prime)
    return [(j, j_prime)]


def resolve_weights(config: RunConfig, count: int, rng: np.random.Generator) -> Optional[np.ndarray]:
    """None for uniform weights, else a length-count nonnegative vector"""
    source = config.weights
    if source == "uniform":
        return None
    if source == "random":
        return rng.exponential(size=count)
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise HypothesisError(f"Cannot read weight file {path}: {e}") from e
    try:
        values = json.loads(text) if path.suffix == ".json" else [float(x) for x in text.replace(",", " ").split()]
    except ValueError as e:
        raise HypothesisError(f"Weight file {path} is malformed: {e}") from e
    weights = np.asarray(values, dtype=float)
    if weights.shape != (count,):
        raise HypothesisError(f"Weight file holds {weights.size} values, the basis has {count} vectors")
    return weights


def cmd_dims(config: RunConfig) -> Tuple[List[Any], List[Dict[str, Any]], int]:
    results, rows = [], []
    for dims in config.dims:
        graded = graded_subspace(dims)
        sizes = [level.size for level in graded.levels]
        entry = {
            "dims": list(dims.d),
            "k": dims.k,
            "N": dims.N,
            "D": dims.D,
            "M": dims.M,
            "level_sizes": sizes,
            "dim_S": graded.dim_S,
            "polynomial_agrees": sizes == level_sizes_from_polynomial(dims),
            "level_sets_agree": [len(members) for members in level_sets(dims).values()] == sizes,
        }
        if dims.k == 2:
            entry["closed_form_agrees"] = sizes == [level_size_closed_form(*dims.d, n) for n in range(dims.N + 1)]
        results.append(entry)
        rows += [{"dims": str(dims), "n": n, "size": size, "sum_zero_dim": level.sum_zero_dim}
                 for n, (size, level) in enumerate(zip(sizes, graded.levels))]
    return results, rows, EXIT_OK


def cmd_basis(config: RunConfig) -> Tuple[List[Any], List[Dict[str, Any]], int]:
    tol = get_settings().tolerances.basis
    results, rows, passed = [], [], True
    for dims in config.dims:
        for j, j_prime in _pairs(config, dims):
            basis = build_basis(dims, j, j_prime)
            if config.rotate_fill:
                basis = basis_with_rotated_fill(basis, config.seed)
            validation = validate_basis(basis, tol=tol)
            entry: Dict[str, Any] = {"dims": list(dims.d), "pair": [j, j_prime], "validation": validation}
            ok = validation["passed"]
            if basis.pair is not None:
                entry["census"] = census_report(basis)
                ok = ok and entry["census"]["passed"]
            else:
                flips = flip_symmetry_errors(basis)
                entry["flip"] = flips
                ok = ok and max(flips.values()) <= tol
            entry["basis"] = basis.to_json_dict()
            if not ok:
                failed = validation["failed"] or ["census" if basis.pair is not None else "flip"]
                logger.error(f"Basis checks failed for {dims} pair ({j}, {j_prime}): {failed}")
                entry["failed_check"] = failed[0]
            passed = passed and ok
            results.append(entry)
            rows.append({"dims": str(dims), "j": j, "j_prime": j_prime, "count": basis.count, "M": dims.M,
                         "orthonormality": validation["checks"]["orthonormality"]["value"],
                         "orthogonal_to_T": validation["checks"]["orthogonal_to_T"]["value"], "passed": ok})
    return results, rows, EXIT_OK if passed else EXIT_CERTIFICATION_FAILED


def cmd_certify(config: RunConfig) -> Tuple[List[Any], List[Dict[str, Any]], int]:
    service = CertificationService(tol=config.tol, method=config.method)
    rng = np.random.default_rng(config.seed)
    results, rows = [], []
    for dims in config.dims:
        for j, j_prime in _pairs(config, dims):
            count = build_basis(dims, j, j_prime).count
            weights = resolve_weights(config, count, rng)
            (j, j_prime), reports = service.certify_pair(dims, j, j_prime, weights=weights,
                                                         all_levels=config.all_levels, reflect=config.reflect,
                                                         seed=config.seed)
            for kind, s, report in reports:
                results.append({"pair": [j, j_prime], "state": kind, "report": report})
                witness = report.witness or {}
                rows.append({"dims": str(dims), "pair": f"{j},{j_prime}", "state": kind, "j": s,
                             "a": witness.get("a"), "b": witness.get("b"), "c": witness.get("c"),
                             "lam": witness.get("lam"), "witness_value": witness.get("value"),
                             "min_eigenvalue": report.min_eigenvalue, "verdict": report.verdict.value})
    all_npt = all(entry["report"].is_npt for entry in results)
    return results, rows, EXIT_OK if (all_npt or config.no_assert) else EXIT_CERTIFICATION_FAILED


def cmd_upb(config: RunConfig) -> Tuple[List[Any], List[Dict[str, Any]], int]:
    service = UPBService(restarts=config.restarts, seed=config.seed, method=config.method)
    results, rows = [], []
    if config.search_f:
        found = False
        for dims in config.dims:
            report = service.search_F(dims)
            found = found or report["upb_found"]
            results.append(report)
            rows.append({"dims": str(dims), "largest_orthogonal_size": report["largest_orthogonal_size"],
                         "upb_found": report["upb_found"]})
        return results, rows, EXIT_CERTIFICATION_FAILED if found and not config.no_assert else EXIT_OK

    family = service.load_family(config.fixture)
    report = service.run_pipeline(family)
    results.append(report)
    for cut, value in report.get("ppt", {}).get("min_eigenvalues", {}).items():
        rows.append({"family": family.name, "cut": cut, "min_eigenvalue": value})
    ok = service.is_bound_entangled(report)
    return results, rows, EXIT_OK if (ok or config.no_assert) else EXIT_CERTIFICATION_FAILED


def cmd_seesaw(config: RunConfig) -> Tuple[List[Any], List[Dict[str, Any]], int]:
    tolerances = get_settings().tolerances
    results, rows, passed = [], [], True
    for dims in config.dims:
        P = projector_S(dims) if config.target == "S" else projector_T(dims)
        result = seesaw_max_product_overlap(P, dims, restarts=config.restarts, iterations=config.iterations,
                                            seed=config.seed, method=config.method)
        if config.target == "S":
            ok = result.value <= 1.0 - tolerances.complete_entanglement
            claim = "completely entangled (numerical certificate)" if ok else "product vector found"
        else:
            ok = result.value >= 1.0 - 1e-8
            claim = "product vector in T found" if ok else "no product vector reached"
        passed = passed and ok and result.monotone
        results.append({"dims": list(dims.d), "target": config.target, "result": result, "claim": claim})
        rows.append({"dims": str(dims), "target": config.target, "value": result.value, "passed": ok})
    return results, rows, EXIT_OK if (passed or config.no_assert) else EXIT_CERTIFICATION_FAILED


def cmd_survey(config: RunConfig) -> Tuple[List[Any], List[Dict[str, Any]], int]:
    service = CertificationService(tol=config.tol, method=config.method)
    results, rows = [], []
    for dims in config.dims:
        report = service.survey(dims, samples=config.samples, seed=config.seed)
        results.append(report)
        for row in report["rows"]:
            for cut, value in row["min_eigenvalues"].items():
                rows.append({"dims": str(dims), "sample": row["sample"], "kind": row["kind"], "cut": cut,
                             "min_eigenvalue": value})
    return results, rows, EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], Tuple[List[Any], List[Dict[str, Any]], int]]] = {
    "dims": cmd_dims,
    "basis": cmd_basis,
    "certify": cmd_certify,
    "upb": cmd_upb,
    "seesaw": cmd_seesaw,
    "survey": cmd_survey,
}


def run_command(name: str, config: RunConfig) -> CommandResult:
    """Run one command; library errors propagate as CESKitError"""
    start = time.perf_counter()
    results, rows, exit_code = COMMANDS[name](config)
    elapsed = time.perf_counter() - start
    logger.info(f"Command {name} finished with exit code {exit_code} in {elapsed:.3f}s")
    return CommandResult(name, config, results, rows, exit_code, elapsed)


def run_command_safe(name: str, config: RunConfig) -> Dict[str, Any]:
    """Dictionary outcome in the style of the service layer: success flag, exit code, report or error"""
    try:
        result = run_command(name, config)
        return {"success": result.exit_code == EXIT_OK, "exit_code": result.exit_code,
                "report": to_plain(result.document())}
    except CESKitError as e:
        logger.warning(f"Command {name} rejected: {e.message}")
        return {"success": False, "exit_code": e.exit_code, "error": e.to_dict()}
