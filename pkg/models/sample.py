from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .examples import MILExample
from .kinds import ProblemKind


class ReducedSample(BaseModel):
    """Выборка мешков S' = α(S) с информацией о происхождении"""
    model_config = ConfigDict(frozen=True)

    examples: tuple[MILExample, ...] = ()
    kind: ProblemKind
    source_dim: Optional[int] = Field(None, ge=1)
    k: Optional[int] = Field(None, ge=2)
    skipped_count: int = Field(0, ge=0)
    # Индекс исходного примера для каждого мешка
    source_indices: tuple[int, ...] = ()

    @model_validator(mode="after")
    def check_consistency(self) -> "ReducedSample":
        if len(self.source_indices) != len(self.examples):
            raise ValueError("source_indices must match examples one to one")
        dims = {ex.dim for ex in self.examples}
        if len(dims) > 1:
            raise ValueError(f"reduced bags have mixed dimensions: {sorted(dims)}")
        if dims and self.source_dim is not None:
            expected = self.source_dim * (self.k if self.kind in (ProblemKind.MCL, ProblemKind.LCL) else 1)
            if dims != {expected}:
                raise ValueError(f"reduced bag dimension {dims.pop()} != expected {expected}")
        return self

    @property
    def n(self) -> int:
        return len(self.examples)

    @property
    def original_size(self) -> int:
        return len(self.examples) + self.skipped_count

    @property
    def dim(self) -> Optional[int]:
        return self.examples[0].dim if self.examples else None

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(ex.label for ex in self.examples)
