import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .weights import NORM_SLACK


class HypothesisGrid(BaseModel):
    """Конечный набор весов, заменяющий непрерывный класс гипотез"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: np.ndarray
    description: str = ""
    lambda_cap: float = Field(math.inf, gt=0)

    @field_validator("points", mode="before")
    @classmethod
    def as_matrix(cls, value) -> np.ndarray:
        points = np.array(value, dtype=float, ndmin=2)
        if points.ndim != 2 or points.shape[0] == 0 or points.shape[1] == 0:
            raise ValueError("grid needs a nonempty (G, dim) array of points")
        if not np.all(np.isfinite(points)):
            raise ValueError("grid points must be finite")
        points.setflags(write=False)
        return points

    @model_validator(mode="after")
    def check_cap(self) -> "HypothesisGrid":
        norms = np.linalg.norm(self.points, axis=1)
        if np.any(norms > self.lambda_cap * (1 + NORM_SLACK)):
            raise ValueError(f"grid point exceeds lambda_cap = {self.lambda_cap}")
        return self

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]
