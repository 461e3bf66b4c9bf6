from typing import Optional, Sequence, Union

import numpy as np
from scipy import sparse

from core.errors import EmptySampleError
from core.losses import pack_bags
from core.scoring import check_dim
from models import LinearWeights, MILExample

WeightsLike = Union[LinearWeights, np.ndarray, Sequence[float]]


def as_vector(w: WeightsLike) -> np.ndarray:
    if isinstance(w, LinearWeights):
        return w.to_array()
    return np.asarray(w, dtype=float).ravel()


def project_ball(w: np.ndarray, lambda_cap: Optional[float]) -> np.ndarray:
    """Проекция на шар ‖w‖ ≤ Λ; None - без ограничения"""
    if lambda_cap is None:
        return w
    norm = np.linalg.norm(w)
    if norm <= lambda_cap:
        return w
    return w * (lambda_cap / norm)


def group_argmax(scores: np.ndarray, starts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Максимум по группам и индекс первого максимизатора (наименьший индекс)"""
    sizes = np.diff(np.append(starts, scores.shape[0]))
    group_max = np.maximum.reduceat(scores, starts)
    positions = np.arange(scores.shape[0])
    is_max = scores == np.repeat(group_max, sizes)
    first = np.minimum.reduceat(np.where(is_max, positions, scores.shape[0]), starts)
    return group_max, first


class ConvexMilProblem:
    """f(w) = ½‖w‖² + C Σ_g max(0, 1 + max_{a ∈ g} <w, a>).

    Одноклассовый MI-SVM: группы - отрицательные мешки, a = x.
    Выпуклая подзадача DC: положительный мешок дает группу из одного -x̂ (свидетель).
    """

    def __init__(self, rows: np.ndarray, starts: np.ndarray, c_reg: float):
        self.rows = np.asarray(rows, dtype=float)
        self.starts = np.asarray(starts, dtype=int)
        self.c_reg = float(c_reg)

    @property
    def dim(self) -> int:
        return self.rows.shape[1]

    @property
    def n_groups(self) -> int:
        return self.starts.shape[0]

    def selection_matrix(self) -> sparse.csr_matrix:
        """P[j, g] = 1, если строка j принадлежит группе g"""
        n_rows = self.rows.shape[0]
        sizes = np.diff(np.append(self.starts, n_rows))
        groups = np.repeat(np.arange(self.n_groups), sizes)
        return sparse.csr_matrix((np.ones(n_rows), (np.arange(n_rows), groups)), shape=(n_rows, self.n_groups))

    def value(self, w: np.ndarray) -> float:
        group_max, _ = group_argmax(self.rows @ w, self.starts)
        return float(0.5 * w @ w + self.c_reg * np.maximum(0.0, 1.0 + group_max).sum())

    def subgradient(self, w: np.ndarray) -> np.ndarray:
        group_max, first = group_argmax(self.rows @ w, self.starts)
        active = first[1.0 + group_max > 0]
        return w + self.c_reg * self.rows[active].sum(axis=0)


def objective_misvm(sample: Sequence[MILExample], w: WeightsLike, c_reg: float) -> float:
    """½‖w‖² + C Σ_i max(0, 1 - y_i max_{x ∈ B_i} <w, x>) (слаки исключены)"""
    if len(sample) == 0:
        raise EmptySampleError("MI-SVM objective of an empty sample is undefined")
    vector = as_vector(w)
    X, starts, labels = pack_bags(sample)
    check_dim(vector.shape[0], X.shape[1], "bag")
    return objective_from_packed(X, starts, labels, vector, c_reg)


def objective_from_packed(
    X: np.ndarray, starts: np.ndarray, labels: np.ndarray, w: np.ndarray, c_reg: float
) -> float:
    bag_max = np.maximum.reduceat(X @ w, starts)
    return float(0.5 * w @ w + c_reg * np.maximum(0.0, 1.0 - labels * bag_max).sum())
