"""
Basis Models
Ordered orthonormal bases of S with level labels and anchor roles
"""

from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .tensor_models import Dims, PairEmbedding


class BasisRole(str, Enum):
    ZETA0 = "zeta0"
    ZETA1 = "zeta1"
    ZETA2 = "zeta2"
    ZETA3 = "zeta3"
    FILL = "fill"


class GradedBasis(BaseModel):
    """M unit vectors spanning S, each supported on a single level"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    dims: Dims
    pair: Optional[PairEmbedding] = Field(default=None, description="Absent for the equal bipartite basis")
    vectors: np.ndarray = Field(description="M x D complex array, one basis vector per row")
    levels: List[int]
    roles: List[BasisRole]
    labels: List[str] = Field(description="Family tag of every vector (a(x,y), b(n,p), z0, zr, f(p), ...)")

    @model_validator(mode="after")
    def check_lengths(self) -> "GradedBasis":
        count = self.vectors.shape[0]
        if not (len(self.levels) == len(self.roles) == len(self.labels) == count):
            raise ValueError("levels, roles and labels must have one entry per vector")
        if self.vectors.ndim != 2 or self.vectors.shape[1] != self.dims.D:
            raise ValueError(f"vectors must be an M x {self.dims.D} array")
        return self

    @property
    def count(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def anchors(self) -> Dict[str, int]:
        return {role.value: s for s, role in enumerate(self.roles) if role != BasisRole.FILL}

    def anchor(self, role: BasisRole) -> np.ndarray:
        return self.vectors[self.anchors[role.value]]

    def level_block(self, n: int) -> np.ndarray:
        return self.vectors[[s for s, level in enumerate(self.levels) if level == n]]

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "dims": list(self.dims.d),
            "pair": [self.pair.j, self.pair.j_prime] if self.pair else None,
            "count": self.count,
            "anchors": self.anchors,
            "vectors": [
                {
                    "level": level,
                    "role": role.value,
                    "label": label,
                    "amplitudes": [[float(z.real), float(z.imag)] for z in row],
                }
                for row, level, role, label in zip(self.vectors, self.levels, self.roles, self.labels)
            ],
        }
