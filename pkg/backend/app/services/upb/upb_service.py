"""
UPB Service
Loads product-family fixtures and runs the unextendability / bound-entanglement
pipeline or the search inside F with one restart budget and seed
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ...core.config import get_settings
from ...models.tensor_models import Dims
from ...models.upb_models import ProductFamily
from .upb_toolkit import BOUND_ENTANGLED_LABEL, FIXTURE_DIR, load_product_family, upb_pipeline, upb_search_in_F

logger = logging.getLogger("ces-kit-upb")


class UPBService:
    """Seeded UPB checks sharing a restart budget and eigensolver"""

    def __init__(self, restarts: Optional[int] = None, seed: Optional[int] = None, method: Optional[str] = None):
        self.restarts = restarts or get_settings().seesaw.restarts
        self.seed = seed
        self.method = method
        logger.info(f"UPB service initialized (restarts={self.restarts}, seed={seed})")

    def load_family(self, fixture: Optional[Union[str, Path]] = None) -> ProductFamily:
        """The given fixture, or the bundled TILES family"""
        return load_product_family(fixture or FIXTURE_DIR / "tiles.json")

    def run_pipeline(self, family: ProductFamily) -> Dict[str, Any]:
        report = upb_pipeline(family, restarts=self.restarts, seed=self.seed, method=self.method)
        logger.info(f"UPB pipeline on {family.name}: {report['verdict']}")
        return report

    def search_F(self, dims: Dims) -> Dict[str, Any]:
        return upb_search_in_F(dims, restarts=self.restarts, seed=self.seed, method=self.method)

    @staticmethod
    def is_bound_entangled(report: Dict[str, Any]) -> bool:
        return report.get("verdict") == BOUND_ENTANGLED_LABEL
