import logging
import math
from pathlib import Path
from typing import Literal, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from models import (
    Bag,
    Instance,
    LCLExample,
    LinearWeights,
    MCLExample,
    MILExample,
    MulticlassWeights,
    ProblemKind,
    TRLExample,
)

logger = logging.getLogger(__name__)

Weights = Union[LinearWeights, MulticlassWeights]


class DatasetParseError(ValueError):
    def __init__(self, path: Path, line: int, detail: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {detail}")


# Схемы записей: одна строка JSON на пример


class MILRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    bag: list[list[float]] = Field(min_length=1)
    label: Literal[-1, 1]

    def to_example(self) -> MILExample:
        return MILExample(bag=Bag.of(self.bag), label=self.label)

    @classmethod
    def from_example(cls, ex: MILExample) -> "MILRecord":
        return cls(bag=[list(x.coords) for x in ex.bag.instances], label=ex.label)


class TRLRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    items: list[list[float]] = Field(min_length=1)
    target_index: int = Field(ge=0)

    def to_example(self) -> TRLExample:
        return TRLExample.of(self.items, self.target_index)

    @classmethod
    def from_example(cls, ex: TRLExample) -> "TRLRecord":
        return cls(items=[list(x.coords) for x in ex.items], target_index=ex.target_index)


class MCLRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    features: list[float] = Field(min_length=1)
    label: int
    k: int = Field(ge=2)

    def to_example(self) -> MCLExample:
        return MCLExample.of(self.features, self.label, self.k)

    @classmethod
    def from_example(cls, ex: MCLExample) -> "MCLRecord":
        return cls(features=list(ex.x.coords), label=ex.y, k=ex.k)


class LCLRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    features: list[float] = Field(min_length=1)
    label: int
    k: int = Field(ge=2)
    is_true: bool
    # Истинная метка пишется только в файлы для проверки масштаба риска
    true_label: Optional[int] = None

    def to_example(self) -> LCLExample:
        return LCLExample.of(self.features, self.label, self.is_true, self.k)

    @classmethod
    def from_example(cls, ex: LCLExample, true_label: Optional[int] = None) -> "LCLRecord":
        return cls(features=list(ex.x.coords), label=ex.y, k=ex.k, is_true=ex.gamma, true_label=true_label)


class ModelFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["linear", "multiclass"]
    dim: int = Field(ge=1)
    classes: Optional[int] = Field(None, ge=2)
    weights: list[float]
    lambda_cap: Optional[float] = None

    def to_weights(self) -> Weights:
        cap = math.inf if self.lambda_cap is None else self.lambda_cap
        if self.kind == "linear":
            if len(self.weights) != self.dim:
                raise ValueError(f"model has {len(self.weights)} weights, expected dim={self.dim}")
            return LinearWeights.of(*self.weights, lambda_cap=cap)
        if self.classes is None or len(self.weights) != self.dim * self.classes:
            raise ValueError("multiclass model needs classes and dim * classes weights")
        rows = [self.weights[j * self.dim:(j + 1) * self.dim] for j in range(self.classes)]
        return MulticlassWeights.of(rows, lambda_cap=cap)

    @classmethod
    def from_weights(cls, weights: Weights) -> "ModelFile":
        cap = None if math.isinf(weights.lambda_cap) else weights.lambda_cap
        if isinstance(weights, LinearWeights):
            return cls(kind="linear", dim=weights.dim, weights=list(weights.w), lambda_cap=cap)
        flat = [v for row in weights.rows for v in row]
        return cls(kind="multiclass", dim=weights.dim, classes=weights.k, weights=flat, lambda_cap=cap)


RECORDS: dict[ProblemKind, type[BaseModel]] = {
    ProblemKind.MIL: MILRecord,
    ProblemKind.TRL: TRLRecord,
    ProblemKind.MCL: MCLRecord,
    ProblemKind.LCL: LCLRecord,
}


def _prepare(path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(exist_ok=True, parents=True)
    return path


def read_dataset(path: Path, kind: ProblemKind) -> tuple[list, Optional[list[int]]]:
    """Читает JSONL-файл; возвращает примеры и (для LCL) истинные метки, если они есть во всех записях"""
    path = Path(path)
    record_type = RECORDS[ProblemKind(kind)]
    examples, truth = [], []
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = record_type.model_validate_json(line)
                examples.append(record.to_example())
            except (ValidationError, ValueError) as e:
                raise DatasetParseError(path, number, str(e))
            truth.append(getattr(record, "true_label", None))
    logger.info(f"Read {len(examples)} {ProblemKind(kind).value} records from {path}")
    if truth and all(t is not None for t in truth):
        return examples, truth
    return examples, None


def write_dataset(
    path: Path, examples: Sequence, kind: ProblemKind, true_labels: Optional[Sequence[int]] = None
) -> Path:
    path = _prepare(path)
    record_type = RECORDS[ProblemKind(kind)]
    with open(path, "w", encoding="utf-8") as f:
        for i, ex in enumerate(examples):
            if true_labels is not None:
                record = record_type.from_example(ex, true_labels[i])
            else:
                record = record_type.from_example(ex)
            f.write(record.model_dump_json(exclude_none=True) + "\n")
    logger.info(f"Wrote {len(examples)} records to {path}")
    return path


def read_model(path: Path) -> Weights:
    path = Path(path)
    try:
        return ModelFile.model_validate_json(path.read_text(encoding="utf-8")).to_weights()
    except (ValidationError, ValueError) as e:
        raise DatasetParseError(path, 1, str(e))


def write_model(path: Path, weights: Weights) -> Path:
    path = _prepare(path)
    path.write_text(ModelFile.from_weights(weights).model_dump_json() + "\n", encoding="utf-8")
    logger.info(f"Model written to {path}")
    return path
