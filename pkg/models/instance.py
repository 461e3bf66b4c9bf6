import math
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Instance(BaseModel):
    """Вектор признаков x из R^d"""
    model_config = ConfigDict(frozen=True)

    coords: tuple[float, ...] = Field(min_length=1)

    @field_validator("coords")
    @classmethod
    def check_finite(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not all(math.isfinite(v) for v in value):
            raise ValueError("instance coordinates must be finite")
        return value

    @property
    def dim(self) -> int:
        return len(self.coords)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)

    @classmethod
    def from_array(cls, values) -> "Instance":
        return cls(coords=tuple(float(v) for v in np.ravel(values)))


class Bag(BaseModel):
    """Мешок: непустой мультимножество экземпляров одной размерности"""
    model_config = ConfigDict(frozen=True)

    instances: tuple[Instance, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def check_uniform_dim(self) -> "Bag":
        dims = {x.dim for x in self.instances}
        if len(dims) != 1:
            raise ValueError(f"bag instances have mixed dimensions: {sorted(dims)}")
        return self

    @property
    def dim(self) -> int:
        return self.instances[0].dim

    @property
    def size(self) -> int:
        return len(self.instances)

    def to_array(self) -> np.ndarray:
        return np.asarray([x.coords for x in self.instances], dtype=float)

    @classmethod
    def from_array(cls, rows) -> "Bag":
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        return cls(instances=tuple(Instance.from_array(r) for r in rows))

    @classmethod
    def of(cls, points: Sequence[Sequence[float]]) -> "Bag":
        return cls(instances=tuple(Instance(coords=tuple(p)) for p in points))
