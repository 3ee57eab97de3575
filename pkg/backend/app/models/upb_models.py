"""
Product Family Models
Orthonormal product vectors given slot by slot, as in UPB fixtures
"""

from typing import Any, Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.errors import FixtureError
from .tensor_models import Dims


def _parse_amplitude(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise FixtureError(f"Complex amplitude must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


class ProductFamily(BaseModel):
    """Product vectors psi_s = x_{s,1} (x) ... (x) x_{s,k}"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    dims: Dims
    members: List[List[np.ndarray]] = Field(description="members[s][r] is the slot-(r+1) factor of psi_s")
    name: str = "custom"
    provenance: str = ""

    @field_validator("dims", mode="before")
    @classmethod
    def parse_dims(cls, v):
        return v if isinstance(v, Dims) else Dims(d=v)

    @field_validator("members", mode="before")
    @classmethod
    def parse_members(cls, v):
        try:
            return [[np.array([_parse_amplitude(a) for a in factor], dtype=complex) for factor in member] for member in v]
        except (TypeError, ValueError) as e:
            raise FixtureError(f"Cannot parse product family: {e}") from e

    @model_validator(mode="after")
    def check_factor_shapes(self) -> "ProductFamily":
        for s, member in enumerate(self.members):
            if len(member) != self.dims.k:
                raise FixtureError(f"Member {s} has {len(member)} factors, k = {self.dims.k}")
            for r, (factor, d) in enumerate(zip(member, self.dims.d), start=1):
                if factor.shape[0] != d:
                    raise FixtureError(f"Member {s}, slot {r}: factor length {factor.shape[0]} != {d}")
        return self

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "dims": list(self.dims.d),
            "vectors": [[[[float(z.real), float(z.imag)] for z in f] for f in member] for member in self.members],
        }
