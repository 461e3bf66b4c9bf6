from core.differences import lcl_label
from models import Bag, LCLExample, LinearWeights, MILExample, MulticlassWeights, ProblemKind
from .base import Reduction
from .mcl import flatten, mcl_difference_vectors, mcl_restore


def lcl_reduce(ex: LCLExample) -> MILExample:
    """α(x, (y, γ)) = (B_z(x,y), v_γ)"""
    diffs = mcl_difference_vectors(ex.x.to_array(), ex.y, ex.k)
    return MILExample(bag=Bag.from_array(diffs), label=lcl_label(ex.gamma))


def lcl_restore(omega: LinearWeights, k: int) -> MulticlassWeights:
    return mcl_restore(omega, k)


class LCLReduction(Reduction):
    kind = ProblemKind.LCL

    def apply(self, example: LCLExample) -> MILExample:
        return lcl_reduce(example)

    def invert(self, weights: LinearWeights, **params) -> MulticlassWeights:
        return lcl_restore(weights, params["k"])

    def lift(self, hypothesis: MulticlassWeights) -> LinearWeights:
        return flatten(hypothesis)
