from typing import Callable, Sequence

from models import (
    LCLExample,
    LinearWeights,
    LossKind,
    MCLExample,
    MILExample,
    MulticlassWeights,
    TRLExample,
)
from .errors import EmptySampleError
from .losses import binary_loss, lcl_loss, mcl_loss, trl_loss
from .scoring import bag_score


def _mean_in_order(values: Sequence[float]) -> float:
    # Суммирование строго в порядке индексов
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def _require(sample: Sequence, what: str) -> None:
    if len(sample) == 0:
        raise EmptySampleError(f"empirical risk of an empty {what} sample is undefined")


def empirical_risk_mil(
    sample: Sequence[MILExample], w: LinearWeights, loss: LossKind = LossKind.ZERO_ONE
) -> float:
    """R^MI_S(g_w) = (1/n) Σ l(y_i, g_w(B_i))"""
    _require(sample, "bag")
    return _mean_in_order([binary_loss(loss, ex.label, bag_score(w, ex.bag)) for ex in sample])


def _risk(sample: Sequence, hypothesis, loss_fn: Callable, what: str) -> float:
    _require(sample, what)
    return _mean_in_order([float(loss_fn(hypothesis, ex)) for ex in sample])


def empirical_risk_trl(sample: Sequence[TRLExample], w: LinearWeights) -> float:
    return _risk(sample, w, trl_loss, "ranking")


def empirical_risk_mcl(sample: Sequence[MCLExample], weights: MulticlassWeights) -> float:
    return _risk(sample, weights, mcl_loss, "multiclass")


def empirical_risk_lcl(sample: Sequence[LCLExample], weights: MulticlassWeights) -> float:
    return _risk(sample, weights, lcl_loss, "complementary-label")
