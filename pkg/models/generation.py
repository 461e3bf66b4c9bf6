from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from .examples import LCLExample, MCLExample, MILExample, TRLExample
from .kinds import ProblemKind
from .weights import LinearWeights, MulticlassWeights


class GenConfig(BaseModel):
    """Параметры синтетических распределений D и D'"""
    model_config = ConfigDict(frozen=True)

    seed: int = Field(0, ge=0)
    n: int = Field(100, ge=1)
    d: int = Field(2, ge=1)
    k: int = Field(3, ge=2)
    set_size: int = Field(4, ge=1)
    bag_size: int = Field(4, ge=1)
    theta: float = Field(1.0, ge=0, le=1)
    r_norm: float = Field(1.0, gt=0)
    margin: Optional[float] = Field(None, ge=0)


class GeneratedSample(BaseModel):
    """Сгенерированная выборка, заложенная гипотеза и (для LCL) истинные метки"""
    model_config = ConfigDict(frozen=True)

    kind: ProblemKind
    examples: tuple[Union[MILExample, TRLExample, MCLExample, LCLExample], ...]
    planted: Union[LinearWeights, MulticlassWeights]
    threshold: Optional[float] = None
    # Только для проверки леммы о масштабе риска, решателям не передается
    true_labels: Optional[tuple[int, ...]] = None
