"""Разностные векторы, общие для исходных потерь и сведения к MIL.

Исходные 0/1-потери считаются как l_b(v, max_j <d_j, ω>) по тем же векторам d_j,
что попадают в мешок сведения, поэтому округление в обоих пространствах одинаково.
"""
import numpy as np

from .errors import DimensionMismatchError, LabelRangeError


def check_class(y: int, k: int) -> None:
    if k < 2:
        raise LabelRangeError(f"need at least 2 classes, got k={k}")
    if not 1 <= y <= k:
        raise LabelRangeError(f"label {y} outside 1..{k}")


def trl_difference_vectors(items: np.ndarray, target_index: int) -> np.ndarray:
    """{x - x* | x ∈ A \\ x*} в порядке следования объектов; для |A| = 1 форма (0, d)"""
    items = np.atleast_2d(np.asarray(items, dtype=float))
    return np.delete(items, target_index, axis=0) - items[target_index]


def mcl_difference_vectors(x: np.ndarray, y: int, k: int) -> np.ndarray:
    """{z_(x,y') - z_(x,y) | y' != y}, y' по возрастанию; форма (k-1, d*k)"""
    check_class(y, k)
    x = np.asarray(x, dtype=float)
    d = x.shape[0]
    out = np.zeros((k - 1, d * k))
    for row, other in enumerate(c for c in range(1, k + 1) if c != y):
        out[row, (other - 1) * d:other * d] = x
        out[row, (y - 1) * d:y * d] = -x
    return out


def mcl_difference_batch(X: np.ndarray, y: np.ndarray, k: int) -> np.ndarray:
    """Пакетная версия mcl_difference_vectors; форма (n, k-1, d*k), значения те же"""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=int)
    if k < 2:
        raise LabelRangeError(f"need at least 2 classes, got k={k}")
    if y.shape[0] != X.shape[0]:
        raise DimensionMismatchError(f"{X.shape[0]} instances but {y.shape[0]} labels")
    if y.size and (y.min() < 1 or y.max() > k):
        raise LabelRangeError(f"labels must lie in 1..{k}")
    n, d = X.shape
    classes = np.arange(k)
    full = np.zeros((n, k, k, d))
    full[:, classes, classes, :] = X[:, None, :]
    full[np.arange(n)[:, None], classes[None, :], (y - 1)[:, None], :] = -X[:, None, :]
    keep = classes[None, :] != (y - 1)[:, None]
    return full[keep].reshape(n, k - 1, k * d)


def lcl_label(gamma: bool) -> int:
    """v_γ: -1 для обычной метки, +1 для комплементарной.

    Именно такой знак дает тождество l((y, γ), h(x)) = l_b(v_γ, g(B)):
    при γ = True ошибка - это победа конкурента (как в MCL), при γ = False -
    победа запрещенной метки y, т.е. max_{y' != y} <w_y' - w_y, x> <= 0.
    """
    return -1 if gamma else 1
