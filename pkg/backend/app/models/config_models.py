"""
Run Configuration Model
Everything one CLI or tool invocation needs, recorded verbatim in its report
"""

from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator

from ..core.errors import SlotError
from .tensor_models import Dims


class RunConfig(BaseModel):
    """Validated run configuration"""
    dims: List[Dims] = Field(default_factory=list, description="Systems to process, in output order")
    pair: Union[Tuple[int, int], Literal["all"]] = Field(default=(1, 2), description="Slot pair (j, j') or 'all'")
    all_levels: bool = Field(default=False, description="Certify NPT_j for every slot j")
    weights: str = Field(default="uniform", description="uniform | random | path to a weight file")
    tol: Optional[float] = Field(default=None, gt=0, description="Verdict tolerance override")
    restarts: Optional[int] = Field(default=None, ge=1)
    iterations: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    output_format: Literal["json", "csv"] = "json"
    out: Optional[str] = None
    no_assert: bool = False
    reflect: bool = False
    rotate_fill: bool = False
    search_f: bool = False
    fixture: Optional[str] = None
    target: Literal["S", "T"] = "S"
    samples: int = Field(default=20, ge=1)
    method: Optional[Literal["jacobi", "numpy"]] = None
    timing: bool = False

    @field_validator("dims", mode="before")
    @classmethod
    def parse_dims(cls, v):
        if isinstance(v, (str, Dims)):
            v = [v]
        return [d if isinstance(d, Dims) else Dims(d=d) for d in v]

    @field_validator("pair", mode="before")
    @classmethod
    def parse_pair(cls, v):
        if isinstance(v, str):
            text = v.strip().lower()
            if text == "all":
                return "all"
            parts = [p for p in text.replace(" ", "").split(",") if p]
            try:
                v = tuple(int(p) for p in parts)
            except ValueError as e:
                raise SlotError(f"Malformed slot pair {v!r}; expected 'j,j'' or 'all'") from e
        if isinstance(v, (list, tuple)):
            if len(v) != 2 or v[0] == v[1]:
                raise SlotError(f"Slot pair must be two distinct slots, got {v!r}")
            return tuple(int(x) for x in v)
        return v

    def to_report_dict(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json", exclude={"dims"})
        data["dims"] = [list(d.d) for d in self.dims]
        return data
