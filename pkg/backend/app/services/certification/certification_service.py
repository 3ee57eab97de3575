"""
Certification Service
Runs the NPT certificates for one slot pair of a dims instance: the uniform
projector or a weighted mixture, every requested slot and the R-conjugate
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ...core.config import get_settings
from ...models.report_models import CertReport
from ...models.tensor_models import Dims
from ..basis.general_onb import build_basis
from .npt_certifier import certify_mixture, certify_npt_level, conjugate_by_R, mixture, projector, survey

logger = logging.getLogger("ces-kit-certify")

PairReports = List[Tuple[str, int, CertReport]]


class CertificationService:
    """NPT certification of states supported on S with one verdict tolerance and eigensolver"""

    def __init__(self, tol: Optional[float] = None, method: Optional[str] = None):
        settings = get_settings()
        self.tol = tol if tol is not None else settings.tolerances.verdict
        self.method = method or settings.eigensolver.method
        logger.info(f"Certification service initialized (tol={self.tol:g}, method={self.method})")

    def certify_pair(self, dims: Dims, j: int, j_prime: int, weights: Optional[Sequence[float]] = None,
                     all_levels: bool = False, reflect: bool = False,
                     seed: Optional[int] = None) -> Tuple[Tuple[int, int], PairReports]:
        """Reports for the basis built around (j, j'), tagged "direct" or "reflected" with their slot

        Equal bipartite dims always use the pair (1, 2), which is returned alongside the reports.
        """
        basis = build_basis(dims, j, j_prime)
        if basis.pair is None:
            j, j_prime = 1, 2
        rho = projector(basis) if weights is None else mixture(basis, weights)
        slots = range(1, dims.k + 1) if all_levels else [j]

        reports: PairReports = []
        for s in slots:
            if weights is not None and s == j:
                report = certify_mixture(basis, weights, tol=self.tol, compute_spectrum=True,
                                         method=self.method, seed=seed)
            else:
                partner = j_prime if s == j else None
                report = certify_npt_level(rho, dims, s, j_prime=partner, tol=self.tol, method=self.method, seed=seed)
            reports.append(("direct", s, report))

        if reflect:
            reflected = conjugate_by_R(rho, dims)
            for s in slots:
                reports.append(("reflected", s, certify_npt_level(reflected, dims, s, tol=self.tol, use_witness=False,
                                                                  method=self.method, seed=seed)))
        failed = [s for _, s, report in reports if not report.is_npt]
        if failed:
            logger.warning(f"Dims {dims} pair ({j}, {j_prime}): no NPT certificate at slots {failed}")
        return (j, j_prime), reports

    def survey(self, dims: Dims, samples: int, seed: Optional[int] = None) -> Dict[str, Any]:
        return survey(dims, samples=samples, seed=seed, tol=self.tol, method=self.method)
