from typing import Sequence

import numpy as np

from models import Bag, Instance, LinearWeights, MulticlassWeights
from .errors import DimensionMismatchError, EmptySampleError


def check_dim(expected: int, actual: int, what: str = "input") -> None:
    if expected != actual:
        raise DimensionMismatchError(f"{what} has dimension {actual}, expected {expected}")


def bag_score(w: LinearWeights, bag: Bag) -> float:
    """g_w(B) = max_{x ∈ B} <w, x>"""
    check_dim(w.dim, bag.dim, "bag")
    return float(np.max(bag.to_array() @ w.to_array()))


def top1_predict(w: LinearWeights, items: Sequence[Instance]) -> int:
    """Индекс объекта с наибольшей оценкой, при равенстве - наименьший индекс"""
    if len(items) == 0:
        raise EmptySampleError("cannot rank an empty item set")
    for x in items:
        check_dim(w.dim, x.dim, "item")
    scores = np.asarray([x.coords for x in items], dtype=float) @ w.to_array()
    return int(np.argmax(scores))


def class_scores(weights: MulticlassWeights, x: Instance) -> np.ndarray:
    check_dim(weights.dim, x.dim, "instance")
    return weights.to_array() @ x.to_array()


def multiclass_predict(weights: MulticlassWeights, x: Instance) -> int:
    """Класс из 1..k с наибольшей оценкой <w_j, x>"""
    return int(np.argmax(class_scores(weights, x))) + 1
