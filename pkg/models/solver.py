from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .weights import LinearWeights


class SolverConfig(BaseModel):
    """Параметры решателей MI-SVM (c_reg - константа C регуляризации)"""
    model_config = ConfigDict(frozen=True)

    c_reg: float = Field(1.0, gt=0)
    tol: float = Field(1e-6, gt=0)
    max_iters: int = Field(50_000, ge=1)
    max_outer_iters: int = Field(100, ge=1)
    dc_epsilon: float = Field(1e-6, gt=0)
    seed: int = Field(0, ge=0)
    restarts: int = Field(0, ge=0)
    lambda_cap: Optional[float] = Field(None, gt=0)
    polish: bool = True
    warm_start_iters: int = Field(1000, ge=1)
    step_scale: float = Field(1.0, gt=0)
    trace_every: int = Field(100, ge=1)


class SolverResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    weights: LinearWeights
    objective: float
    iterations: int = Field(ge=0)
    objective_trace: tuple[float, ...] = ()
    converged: bool
    solver: str = "oneclass"
