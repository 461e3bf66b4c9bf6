import math
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# Допуск на округление после проекции на шар радиуса Λ
NORM_SLACK = 1e-12


class LinearWeights(BaseModel):
    """Веса w с ограничением ‖w‖ ≤ Λ (Λ = inf означает отсутствие ограничения)"""
    model_config = ConfigDict(frozen=True)

    w: tuple[float, ...] = Field(min_length=1)
    lambda_cap: float = Field(math.inf, gt=0)

    @model_validator(mode="after")
    def check_norm(self) -> "LinearWeights":
        if not all(math.isfinite(v) for v in self.w):
            raise ValueError("weights must be finite")
        if self.norm > self.lambda_cap * (1 + NORM_SLACK):
            raise ValueError(f"‖w‖ = {self.norm} exceeds lambda_cap = {self.lambda_cap}")
        return self

    @property
    def dim(self) -> int:
        return len(self.w)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.w))

    def to_array(self) -> np.ndarray:
        return np.asarray(self.w, dtype=float)

    @classmethod
    def from_array(cls, values, lambda_cap: float = math.inf) -> "LinearWeights":
        return cls(w=tuple(float(v) for v in np.ravel(values)), lambda_cap=lambda_cap)

    @classmethod
    def of(cls, *values: float, lambda_cap: float = math.inf) -> "LinearWeights":
        return cls(w=tuple(values), lambda_cap=lambda_cap)


class MulticlassWeights(BaseModel):
    """Матрица W = (w_1, ..., w_k) с нормой Фробениуса ≤ Λ"""
    model_config = ConfigDict(frozen=True)

    rows: tuple[tuple[float, ...], ...] = Field(min_length=2)
    lambda_cap: float = Field(math.inf, gt=0)

    @model_validator(mode="after")
    def check_rows(self) -> "MulticlassWeights":
        dims = {len(r) for r in self.rows}
        if len(dims) != 1 or 0 in dims:
            raise ValueError(f"rows must share a positive dimension, got {sorted(dims)}")
        if not all(math.isfinite(v) for r in self.rows for v in r):
            raise ValueError("weights must be finite")
        if self.norm > self.lambda_cap * (1 + NORM_SLACK):
            raise ValueError(f"‖W‖ = {self.norm} exceeds lambda_cap = {self.lambda_cap}")
        return self

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows[0])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.to_array()))

    def to_array(self) -> np.ndarray:
        return np.asarray(self.rows, dtype=float)

    @classmethod
    def from_array(cls, matrix, lambda_cap: float = math.inf) -> "MulticlassWeights":
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        return cls(rows=tuple(tuple(float(v) for v in r) for r in matrix), lambda_cap=lambda_cap)

    @classmethod
    def of(cls, rows: Sequence[Sequence[float]], lambda_cap: float = math.inf) -> "MulticlassWeights":
        return cls(rows=tuple(tuple(r) for r in rows), lambda_cap=lambda_cap)
