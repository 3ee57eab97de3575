"""
Tensor Index Models
Local dimensions, multi-indices and slot pairs of H = C^{d_1} x ... x C^{d_k}
"""

from math import prod
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.config import get_settings
from ..core.errors import DimsError, SlotError


class Dims(BaseModel):
    """Local dimensions (d_1, ..., d_k) of a multipartite system"""
    model_config = ConfigDict(frozen=True)

    d: Tuple[int, ...] = Field(description="Local dimensions, slot 1 first")

    @field_validator("d", mode="before")
    @classmethod
    def coerce_tuple(cls, v):
        if isinstance(v, str):
            v = [part for part in v.replace(" ", "").split(",") if part]
        try:
            return tuple(int(x) for x in v)
        except (TypeError, ValueError) as e:
            raise DimsError(f"Cannot read dimensions from {v!r}") from e

    @model_validator(mode="after")
    def check_shape(self) -> "Dims":
        if len(self.d) < 2:
            raise DimsError(f"Need k >= 2 tensor factors, got {len(self.d)}", {"dims": list(self.d)})
        if any(x < 2 for x in self.d):
            raise DimsError(f"Every local dimension must be >= 2, got {list(self.d)}", {"dims": list(self.d)})
        max_dimension = get_settings().limits.max_dimension
        if prod(self.d) > max_dimension:
            raise DimsError(
                f"D = {prod(self.d)} exceeds the dense limit {max_dimension}",
                {"dims": list(self.d), "max_dimension": max_dimension},
            )
        return self

    @classmethod
    def of(cls, *d: int) -> "Dims":
        if len(d) == 1 and not isinstance(d[0], int):
            return cls(d=d[0])
        return cls(d=d)

    @property
    def k(self) -> int:
        return len(self.d)

    @property
    def N(self) -> int:
        """Top level: sum of (d_j - 1)"""
        return sum(self.d) - self.k

    @property
    def D(self) -> int:
        return prod(self.d)

    @property
    def M(self) -> int:
        """Maximal dimension of a completely entangled subspace"""
        return self.D - sum(self.d) + self.k - 1

    def slot_dim(self, j: int) -> int:
        """Dimension of slot j (1-based)"""
        self.check_slot(j)
        return self.d[j - 1]

    def check_slot(self, j: int) -> None:
        if not isinstance(j, int) or not 1 <= j <= self.k:
            raise SlotError(f"Slot {j} out of range 1..{self.k}", {"slot": j, "k": self.k})

    def __str__(self) -> str:
        return "x".join(str(x) for x in self.d)


class MultiIndex(BaseModel):
    """A point i of I with its level n(i) = sum of i_r"""
    model_config = ConfigDict(frozen=True)

    i: Tuple[int, ...] = Field(description="Per-slot basis labels")
    rank: int = Field(ge=0, description="Lexicographic rank, slot 1 most significant")

    @property
    def level(self) -> int:
        return sum(self.i)


class PairEmbedding(BaseModel):
    """The embedding ~ of C^nu x C^nu into H at slots (j, j')"""
    model_config = ConfigDict(frozen=True)

    dims: Dims
    j: int = Field(description="Slot receiving the first bipartite factor")
    j_prime: int = Field(description="Slot receiving the second bipartite factor")

    @model_validator(mode="after")
    def check_slots(self) -> "PairEmbedding":
        self.dims.check_slot(self.j)
        self.dims.check_slot(self.j_prime)
        if self.j == self.j_prime:
            raise SlotError(f"Slot pair must be distinct, got j = j' = {self.j}", {"j": self.j})
        return self

    @property
    def nu(self) -> int:
        return min(self.dims.slot_dim(self.j), self.dims.slot_dim(self.j_prime))

    @property
    def nu_prime(self) -> int:
        return max(self.dims.slot_dim(self.j), self.dims.slot_dim(self.j_prime))

    @property
    def is_equal_bipartite(self) -> bool:
        """The k = 2, d_1 = d_2 case handled by the antisymmetric/symmetric basis"""
        return self.dims.k == 2 and self.nu == self.nu_prime

    def index(self, x: int, x_prime: int) -> Tuple[int, ...]:
        """Multi-index with x at slot j, x' at slot j', 0 elsewhere"""
        if not (0 <= x < self.nu and 0 <= x_prime < self.nu):
            raise SlotError(f"Pair ({x}, {x_prime}) outside 0..{self.nu - 1}", {"x": x, "x_prime": x_prime})
        i: List[int] = [0] * self.dims.k
        i[self.j - 1] = x
        i[self.j_prime - 1] = x_prime
        return tuple(i)

