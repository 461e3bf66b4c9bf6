from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class DeviationMode(str, Enum):
    LITERAL = "literal"
    LOG_FORM = "log-form"


class BoundParams(BaseModel):
    """Параметры оценки сложности Радемахера для класса G (r_norm - граница ‖x‖)"""
    model_config = ConfigDict(frozen=True)

    lipschitz: float = Field(ge=0)
    r_norm: float = Field(gt=0)
    lambda_cap: float = Field(gt=0, allow_inf_nan=False)
    n: int = Field(ge=1)
    total_bag_instances: int = Field(ge=1)
    union_instances: int = Field(ge=1)
    eta: float = Field(gt=0)
    delta: float = Field(0.05, gt=0, lt=1)

    @model_validator(mode="after")
    def check_counts(self) -> "BoundParams":
        if self.union_instances > self.total_bag_instances:
            raise ValueError("union_instances cannot exceed total_bag_instances")
        return self


class ComplexityBound(BaseModel):
    model_config = ConfigDict(frozen=True)

    expr1: float
    expr2: float
    value: float
    expr1_degenerate: bool = False
    expr2_degenerate: bool = False


class BoundReport(BaseModel):
    """Все слагаемые итоговой оценки обобщающей способности"""
    model_config = ConfigDict(frozen=True)

    empirical_risk: float
    complexity: ComplexityBound
    deviation_literal: float
    deviation_log: float
    scale: float
    bound_literal: float
    bound_log: float
    params: BoundParams
    theta: Optional[float] = None
