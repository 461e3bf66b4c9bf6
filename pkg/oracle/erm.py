from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from core.errors import EmptySampleError
from core.losses import loss_matrix
from models import HypothesisGrid, LinearWeights, LossKind, MulticlassWeights, ProblemKind


@dataclass(frozen=True)
class ErmResult:
    total: int
    index: int
    weights: Union[LinearWeights, MulticlassWeights]
    n: int = 1

    @property
    def risk(self) -> float:
        return self.total / self.n


def point_to_hypothesis(kind: ProblemKind, point: np.ndarray, k: int | None = None):
    """Точка сетки -> гипотеза исходного пространства (W восстанавливается по строкам)"""
    if ProblemKind(kind) in (ProblemKind.MCL, ProblemKind.LCL):
        return MulticlassWeights.from_array(np.asarray(point).reshape(k, -1))
    return LinearWeights.from_array(point)


def loss_sums(sample: Sequence, kind: ProblemKind, grid: HypothesisGrid) -> np.ndarray:
    """Целочисленные суммы потерь Σ_i l(y_i, h(x_i)) для каждой точки сетки"""
    if len(sample) == 0:
        return np.zeros(grid.size, dtype=np.int64)
    return loss_matrix(ProblemKind(kind), grid.points, sample, LossKind.ZERO_ONE).sum(axis=1)


def brute_force_erm(sample: Sequence, kind: ProblemKind, grid: HypothesisGrid) -> ErmResult:
    """Точный минимум эмпирического риска по сетке; при равенстве - наименьший индекс"""
    if len(sample) == 0:
        raise EmptySampleError("ERM over an empty sample is undefined")
    sums = loss_sums(sample, kind, grid)
    index = int(np.argmin(sums))
    k = getattr(sample[0], "k", None)
    return ErmResult(
        total=int(sums[index]),
        index=index,
        weights=point_to_hypothesis(kind, grid.points[index], k),
        n=len(sample),
    )
