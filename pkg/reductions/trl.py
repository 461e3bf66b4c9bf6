from core.differences import trl_difference_vectors
from models import Bag, LinearWeights, MILExample, ProblemKind, TRLExample
from .base import Reduction


def trl_reduce(ex: TRLExample) -> MILExample | None:
    """α(A, x*) = (B_(A,x*), -1); для |A| = 1 возвращает None (пример пропускается)"""
    if len(ex.items) == 1:
        return None
    diffs = trl_difference_vectors(ex.items_array(), ex.target_index)
    return MILExample(bag=Bag.from_array(diffs), label=-1)


def trl_restore(w: LinearWeights) -> LinearWeights:
    """β: g_w -> h_w с теми же весами; предсказание через top1_predict"""
    return w


class TRLReduction(Reduction):
    kind = ProblemKind.TRL

    def apply(self, example: TRLExample) -> MILExample | None:
        return trl_reduce(example)

    def invert(self, weights: LinearWeights, **params) -> LinearWeights:
        return trl_restore(weights)

    def lift(self, hypothesis: LinearWeights) -> LinearWeights:
        return hypothesis
