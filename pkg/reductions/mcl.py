import numpy as np

from core.differences import check_class, mcl_difference_batch, mcl_difference_vectors
from core.errors import DimensionMismatchError
from models import Bag, Instance, LinearWeights, MCLExample, MILExample, MulticlassWeights, ProblemKind
from .base import Reduction


def embed_array(x: np.ndarray, y: int, k: int) -> np.ndarray:
    d = x.shape[0]
    z = np.zeros(d * k)
    z[(y - 1) * d:y * d] = x
    return z


def mcl_embed(x: Instance, y: int, k: int) -> Instance:
    """z_(x,y): вектор d*k, в блоке y стоит x, остальные блоки нулевые"""
    check_class(y, k)
    return Instance.from_array(embed_array(x.to_array(), y, k))


def mcl_reduce(ex: MCLExample) -> MILExample:
    """α(x, y) = (B_z(x,y), -1)"""
    diffs = mcl_difference_vectors(ex.x.to_array(), ex.y, ex.k)
    return MILExample(bag=Bag.from_array(diffs), label=-1)


def mcl_restore(omega: LinearWeights, k: int) -> MulticlassWeights:
    """β: ω -> W, блоки длины d становятся строками w_1..w_k"""
    if k < 2 or omega.dim % k != 0:
        raise DimensionMismatchError(f"weight dimension {omega.dim} is not divisible by k={k}")
    rows = omega.to_array().reshape(k, omega.dim // k)
    return MulticlassWeights.from_array(rows, lambda_cap=omega.lambda_cap)


def flatten(weights: MulticlassWeights) -> LinearWeights:
    """W -> ω (построчная конкатенация), ‖ω‖ = ‖W‖"""
    return LinearWeights.from_array(weights.to_array().ravel(), lambda_cap=weights.lambda_cap)


class MCLReduction(Reduction):
    kind = ProblemKind.MCL

    def apply(self, example: MCLExample) -> MILExample:
        return mcl_reduce(example)

    def invert(self, weights: LinearWeights, **params) -> MulticlassWeights:
        return mcl_restore(weights, params["k"])

    def lift(self, hypothesis: MulticlassWeights) -> LinearWeights:
        return flatten(hypothesis)
