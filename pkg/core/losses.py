from typing import Sequence

import numpy as np

from models import (
    LCLExample,
    LinearWeights,
    LossKind,
    MCLExample,
    MILExample,
    MulticlassWeights,
    ProblemKind,
    TRLExample,
)
from .differences import lcl_label, mcl_difference_batch, mcl_difference_vectors, trl_difference_vectors
from .errors import DimensionMismatchError, LabelRangeError
from .scoring import bag_score, check_dim

# Примеров на один блок в пакетных потерях по примерам
BATCH_CHUNK = 1024


def _check_binary_label(y: int) -> None:
    if y not in (-1, 1):
        raise LabelRangeError(f"binary label must be -1 or +1, got {y}")


def zero_one_binary(y: int, score: float) -> int:
    """l_b(y, s) = I(y*s <= 0): ноль на границе считается ошибкой"""
    _check_binary_label(y)
    return int(y * score <= 0)


def hinge(y: int, score: float) -> float:
    _check_binary_label(y)
    return max(0.0, 1.0 - y * score)


def binary_loss(loss: LossKind, y: int, score: float) -> float:
    if loss == LossKind.HINGE:
        return hinge(y, score)
    return float(zero_one_binary(y, score))


def _difference_loss(diffs: np.ndarray, omega: np.ndarray, label: int) -> int:
    """l_b(label, max_j <d_j, ω>); без разностей (одиночный набор) ошибки нет"""
    if diffs.shape[0] == 0:
        return 0
    return zero_one_binary(label, float(np.max(diffs @ omega)))


def trl_loss(w: LinearWeights, ex: TRLExample) -> int:
    """I(<w, x*> - max_{x != x*} <w, x> <= 0), маржа через разности x - x*"""
    check_dim(w.dim, ex.dim, "item set")
    diffs = trl_difference_vectors(ex.items_array(), ex.target_index)
    return _difference_loss(diffs, w.to_array(), -1)


def _check_classes(weights: MulticlassWeights, y: int, k: int) -> None:
    if not 1 <= y <= weights.k:
        raise LabelRangeError(f"label {y} outside 1..{weights.k}")
    if weights.k != k:
        raise DimensionMismatchError(f"weights have {weights.k} classes, example has {k}")


def _multiclass_loss(weights: MulticlassWeights, x, y: int, k: int, label: int) -> int:
    _check_classes(weights, y, k)
    check_dim(weights.dim, x.dim, "instance")
    diffs = mcl_difference_vectors(x.to_array(), y, k)
    return _difference_loss(diffs, weights.to_array().ravel(), label)


def mcl_loss(weights: MulticlassWeights, ex: MCLExample) -> int:
    """I(<w_y, x> - max_{y' != y} <w_y', x> <= 0)

    Считается как I(max_{y' != y} <z_(x,y') - z_(x,y), ω> >= 0), ω = flatten(W).
    """
    return _multiclass_loss(weights, ex.x, ex.y, ex.k, -1)


def lcl_loss(weights: MulticlassWeights, ex: LCLExample) -> int:
    """Обычная метка - как mcl_loss; комплементарная - ошибка, если y побеждает по марже"""
    return _multiclass_loss(weights, ex.x, ex.y, ex.k, lcl_label(ex.gamma))


# Пакетные версии: строка - гипотеза из конечного набора, столбец - пример


def pack_bags(examples: Sequence[MILExample]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Склеивает мешки в матрицу экземпляров; возвращает (X, starts, labels)"""
    sizes = np.asarray([ex.bag.size for ex in examples], dtype=int)
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(int)
    X = np.concatenate([ex.bag.to_array() for ex in examples], axis=0)
    labels = np.asarray([ex.label for ex in examples], dtype=float)
    return X, starts, labels


def _bag_maxima(points: np.ndarray, X: np.ndarray, starts: np.ndarray) -> np.ndarray:
    check_dim(points.shape[1], X.shape[1], "bag")
    return np.maximum.reduceat(points @ X.T, starts, axis=1)


def mil_score_matrix(points: np.ndarray, examples: Sequence[MILExample]) -> np.ndarray:
    points = np.atleast_2d(points)
    if not examples:
        return np.zeros((points.shape[0], 0))
    X, starts, _ = pack_bags(examples)
    return _bag_maxima(points, X, starts)


def mil_loss_matrix(
    points: np.ndarray, examples: Sequence[MILExample], loss: LossKind = LossKind.ZERO_ONE
) -> np.ndarray:
    scores = mil_score_matrix(points, examples)
    labels = np.asarray([ex.label for ex in examples], dtype=float)
    margins = scores * labels
    if loss == LossKind.HINGE:
        return np.maximum(0.0, 1.0 - margins)
    return (margins <= 0).astype(np.int64)


def difference_loss_matrix(points: np.ndarray, blocks: Sequence[np.ndarray], labels: Sequence[int]) -> np.ndarray:
    """(G, n) потерь l_b(v_i, max_j <d_ij, ω>) для блоков разностей d_i.

    Блоки склеиваются так же, как pack_bags склеивает мешки сведенной выборки.
    Пустой блок (одиночный набор TRL) дает нулевую потерю.
    """
    points = np.atleast_2d(points)
    out = np.zeros((points.shape[0], len(blocks)), dtype=np.int64)
    filled = [i for i, block in enumerate(blocks) if block.shape[0]]
    if not filled:
        return out
    sizes = np.asarray([blocks[i].shape[0] for i in filled], dtype=int)
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(int)
    X = np.concatenate([blocks[i] for i in filled], axis=0)
    signs = np.asarray([labels[i] for i in filled], dtype=float)
    out[:, filled] = _bag_maxima(points, X, starts) * signs <= 0
    return out


def trl_loss_matrix(points: np.ndarray, examples: Sequence[TRLExample]) -> np.ndarray:
    points = np.atleast_2d(points)
    blocks = []
    for ex in examples:
        check_dim(points.shape[1], ex.dim, "item set")
        blocks.append(trl_difference_vectors(ex.items_array(), ex.target_index))
    return difference_loss_matrix(points, blocks, [-1] * len(examples))


def _multiclass_blocks(points: np.ndarray, examples: Sequence) -> list[np.ndarray]:
    blocks = []
    for ex in examples:
        if points.shape[1] != ex.k * ex.dim:
            raise DimensionMismatchError(
                f"flattened weights have dimension {points.shape[1]}, expected {ex.k * ex.dim}"
            )
        blocks.append(mcl_difference_vectors(ex.x.to_array(), ex.y, ex.k))
    return blocks


def mcl_loss_matrix(points: np.ndarray, examples: Sequence[MCLExample]) -> np.ndarray:
    """points - сплющенные матрицы W (по строкам), размерность d*k"""
    points = np.atleast_2d(points)
    return difference_loss_matrix(points, _multiclass_blocks(points, examples), [-1] * len(examples))


def lcl_loss_matrix(points: np.ndarray, examples: Sequence[LCLExample]) -> np.ndarray:
    points = np.atleast_2d(points)
    labels = [lcl_label(ex.gamma) for ex in examples]
    return difference_loss_matrix(points, _multiclass_blocks(points, examples), labels)


def loss_matrix(
    kind: ProblemKind,
    points: np.ndarray,
    examples: Sequence,
    loss: LossKind = LossKind.ZERO_ONE,
) -> np.ndarray:
    """Матрица потерь (G, n) для задачи данного типа"""
    if kind == ProblemKind.MIL:
        return mil_loss_matrix(points, examples, loss)
    if loss != LossKind.ZERO_ONE:
        raise ValueError(f"{kind.value} examples only support the zero-one loss")
    if kind == ProblemKind.TRL:
        return trl_loss_matrix(points, examples)
    if kind == ProblemKind.MCL:
        return mcl_loss_matrix(points, examples)
    return lcl_loss_matrix(points, examples)


# Векторные версии по примерам для одной матрицы W


def _difference_maxima(weights: np.ndarray, X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """max_{y' != y_i} <z_(x_i,y') - z_(x_i,y_i), ω> для каждого примера, блоками по BATCH_CHUNK"""
    W = np.atleast_2d(np.asarray(weights, dtype=float))
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=int)
    check_dim(W.shape[1], X.shape[1], "instance")
    omega = W.ravel()
    out = np.empty(X.shape[0])
    for start in range(0, X.shape[0], BATCH_CHUNK):
        stop = start + BATCH_CHUNK
        diffs = mcl_difference_batch(X[start:stop], y[start:stop], W.shape[0])
        out[start:stop] = np.max(diffs @ omega, axis=1)
    return out


def mcl_losses_batch(weights: np.ndarray, X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Потери mcl_loss для массива примеров; y в 1..k"""
    return (-1.0 * _difference_maxima(weights, X, y) <= 0).astype(np.int64)


def lcl_losses_batch(
    weights: np.ndarray, X: np.ndarray, y: np.ndarray, gamma: np.ndarray
) -> np.ndarray:
    signs = np.where(np.asarray(gamma, dtype=bool), -1.0, 1.0)
    return (signs * _difference_maxima(weights, X, y) <= 0).astype(np.int64)


def hypothesis_loss(kind: ProblemKind, hypothesis, ex) -> float:
    """Потеря одной гипотезы на одном примере исходной задачи"""
    if kind == ProblemKind.TRL:
        return trl_loss(hypothesis, ex)
    if kind == ProblemKind.MCL:
        return mcl_loss(hypothesis, ex)
    if kind == ProblemKind.LCL:
        return lcl_loss(hypothesis, ex)
    return zero_one_binary(ex.label, bag_score(hypothesis, ex.bag))
