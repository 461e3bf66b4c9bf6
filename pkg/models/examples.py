from typing import ClassVar, Literal, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .instance import Bag, Instance
from .kinds import ProblemKind


class MILExample(BaseModel):
    """Размеченный мешок (B_i, y_i)"""
    model_config = ConfigDict(frozen=True)
    kind: ClassVar[ProblemKind] = ProblemKind.MIL

    bag: Bag
    label: Literal[-1, 1]

    @property
    def dim(self) -> int:
        return self.bag.dim


class TRLExample(BaseModel):
    """Множество объектов A и индекс лучшего объекта x*"""
    model_config = ConfigDict(frozen=True)
    kind: ClassVar[ProblemKind] = ProblemKind.TRL

    items: tuple[Instance, ...] = Field(min_length=1)
    target_index: int = Field(ge=0)

    @model_validator(mode="after")
    def check_items(self) -> "TRLExample":
        if self.target_index >= len(self.items):
            raise ValueError(
                f"target_index {self.target_index} out of range for {len(self.items)} items"
            )
        if len({x.dim for x in self.items}) != 1:
            raise ValueError("items have mixed dimensions")
        return self

    @property
    def dim(self) -> int:
        return self.items[0].dim

    @property
    def target(self) -> Instance:
        return self.items[self.target_index]

    def items_array(self) -> np.ndarray:
        return np.asarray([x.coords for x in self.items], dtype=float)

    @classmethod
    def of(cls, items: Sequence[Sequence[float]], target_index: int) -> "TRLExample":
        return cls(
            items=tuple(Instance(coords=tuple(p)) for p in items),
            target_index=target_index,
        )


class MCLExample(BaseModel):
    """Пример многоклассовой задачи (x, y), классы 1..k"""
    model_config = ConfigDict(frozen=True)
    kind: ClassVar[ProblemKind] = ProblemKind.MCL

    x: Instance
    y: int
    k: int = Field(ge=2)

    @model_validator(mode="after")
    def check_label(self) -> "MCLExample":
        if not 1 <= self.y <= self.k:
            raise ValueError(f"label {self.y} outside 1..{self.k}")
        return self

    @property
    def dim(self) -> int:
        return self.x.dim

    @classmethod
    def of(cls, x: Sequence[float], y: int, k: int) -> "MCLExample":
        return cls(x=Instance(coords=tuple(x)), y=y, k=k)


class LCLExample(BaseModel):
    """Пример с обычной (gamma=True) или комплементарной (gamma=False) меткой"""
    model_config = ConfigDict(frozen=True)
    kind: ClassVar[ProblemKind] = ProblemKind.LCL

    x: Instance
    y: int
    gamma: bool
    k: int = Field(ge=2)

    @model_validator(mode="after")
    def check_label(self) -> "LCLExample":
        if not 1 <= self.y <= self.k:
            raise ValueError(f"label {self.y} outside 1..{self.k}")
        return self

    @property
    def dim(self) -> int:
        return self.x.dim

    @classmethod
    def of(cls, x: Sequence[float], y: int, gamma: bool, k: int) -> "LCLExample":
        return cls(x=Instance(coords=tuple(x)), y=y, gamma=gamma, k=k)
