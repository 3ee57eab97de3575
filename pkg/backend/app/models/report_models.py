"""
Certification Report Models
Witness specifications, certification outcomes and seesaw results
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.errors import SlotError
from .tensor_models import Dims


class Verdict(str, Enum):
    NPT = "NPT_j-certified"
    PPT_WITHIN_TOLERANCE = "PPT_j-within-tolerance"
    INCONCLUSIVE = "inconclusive"


class WitnessSpec(BaseModel):
    """xi = lam |p0> + |q0>, with q0 carrying a 1 at slot j and at the partner slot

    The partner is j' for the generic witness and j'' for the degenerate one;
    PT_j sends the pair (p0, q0) to (p1, q1) with p1 = e_j and q1 = e_partner.
    """
    model_config = ConfigDict(frozen=True)

    dims: Dims
    j: int
    j_prime: int
    j_double_prime: Optional[int] = None
    lam: float = Field(default=1.0)

    @model_validator(mode="after")
    def check_slots(self) -> "WitnessSpec":
        slots = [self.j, self.j_prime] + ([self.j_double_prime] if self.j_double_prime is not None else [])
        for s in slots:
            self.dims.check_slot(s)
        if len(set(slots)) != len(slots):
            raise SlotError(f"Witness slots must be distinct, got {slots}", {"slots": slots})
        if self.lam == 0:
            raise SlotError("Witness coefficient lambda must be nonzero")
        return self

    @property
    def degenerate(self) -> bool:
        return self.j_double_prime is not None

    @property
    def partner(self) -> int:
        return self.j_double_prime if self.degenerate else self.j_prime

    def _unit(self, *slots: int) -> tuple:
        i = [0] * self.dims.k
        for s in slots:
            i[s - 1] = 1
        return tuple(i)

    @property
    def p0(self) -> tuple:
        return self._unit()

    @property
    def q0(self) -> tuple:
        return self._unit(self.j, self.partner)

    @property
    def p1(self) -> tuple:
        return self._unit(self.j)

    @property
    def q1(self) -> tuple:
        return self._unit(self.partner)


class CertReport(BaseModel):
    """Outcome of one NPT_j certification"""
    dims: List[int]
    j: int
    verdict: Verdict
    witness: Optional[Dict[str, Any]] = Field(default=None, description="slots, lam, (a, b, c), value")
    min_eigenvalue: Optional[float] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)
    seed: Optional[int] = None
    notes: List[str] = Field(default_factory=list)

    @property
    def witness_value(self) -> Optional[float]:
        return None if self.witness is None else self.witness["value"]

    @property
    def is_npt(self) -> bool:
        return self.verdict == Verdict.NPT


class SeesawResult(BaseModel):
    """Best product-state overlap found by alternating maximisation"""
    value: float
    best_restart: int
    restarts: int
    iterations: int
    monotone: bool
    seed: Optional[int] = None
    factors: List[List[List[float]]] = Field(description="Per-slot unit vectors as [re, im] pairs")
