"""
Subspace Models
Per-level summaries of H = sum_n H^(n) and the Vandermonde family spanning F
"""

from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .tensor_models import Dims


class LevelSummary(BaseModel):
    level: int = Field(ge=0)
    size: int = Field(ge=1, description="|I_n|")
    sum_zero_dim: int = Field(ge=0, description="dim S^(n) = |I_n| - 1 for 0 < n < N, else 0")


class GradedSubspace(BaseModel):
    """Level-by-level description of T (uniform vectors) and S (sum-zero parts)"""
    dims: Dims
    levels: List[LevelSummary]

    @property
    def dim_S(self) -> int:
        return sum(level.sum_zero_dim for level in self.levels)

    @property
    def dim_T(self) -> int:
        return len(self.levels)


class VandermondeFamily(BaseModel):
    """N+1 product vectors v_lambda at distinct lambdas"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    dims: Dims
    lambdas: List[complex]
    vectors: np.ndarray = Field(description="(N+1) x D array, row s is v_{lambda_s}")

    @field_validator("lambdas")
    @classmethod
    def distinct(cls, v: List[complex]) -> List[complex]:
        if len(set(v)) != len(v):
            raise ValueError("lambdas must be pairwise distinct")
        return v
