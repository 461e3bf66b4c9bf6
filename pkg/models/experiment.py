from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .generation import GenConfig
from .kinds import ProblemKind
from .solver import SolverConfig


class BoundOverrides(BaseModel):
    model_config = ConfigDict(frozen=True)

    lipschitz: float = Field(1.0, ge=0)
    lambda_cap: Optional[float] = Field(None, gt=0)
    r_norm: Optional[float] = Field(None, gt=0)
    eta: Optional[float] = Field(None, gt=0)
    delta: float = Field(0.05, gt=0, lt=1)
    theta: Optional[float] = Field(None, ge=0, le=1)


class OutputPaths(BaseModel):
    model_config = ConfigDict(frozen=True)

    dataset: Optional[str] = None
    reduced: Optional[str] = None
    model: Optional[str] = None
    report: Optional[str] = None


class ExperimentSpec(BaseModel):
    """Описание эксперимента для CLI (файл --spec в формате JSON)"""
    model_config = ConfigDict(frozen=True)

    kind: ProblemKind
    gen: GenConfig = GenConfig()
    solver: SolverConfig = SolverConfig()
    bound: BoundOverrides = BoundOverrides()
    outputs: OutputPaths = OutputPaths()
    verify: tuple[str, ...] = ()

    @model_validator(mode="after")
    def check_kind(self) -> "ExperimentSpec":
        if self.bound.theta is not None and self.kind != ProblemKind.LCL:
            raise ValueError("theta only applies to lcl experiments")
        return self
