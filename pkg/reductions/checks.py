from typing import Any

from core.losses import hypothesis_loss, zero_one_binary
from core.scoring import bag_score
from models import ProblemKind, VerificationReport
from .sample import get_reduction


def reduced_loss(example: Any, hypothesis: Any, kind: ProblemKind) -> int:
    """l_b(y', g(B')) для α(example) и образа гипотезы; пропущенный пример дает 0"""
    reduction = get_reduction(kind)
    reduced = reduction.apply(example)
    if reduced is None:
        return 0
    return zero_one_binary(reduced.label, bag_score(reduction.lift(hypothesis), reduced.bag))


def check_loss_equality(example: Any, hypothesis: Any, kind: ProblemKind) -> VerificationReport:
    """Проверка l(y, h(x)) = l'(y', h'(x')) для одного примера (точное равенство 0/1)"""
    kind = ProblemKind(kind)
    original = hypothesis_loss(kind, hypothesis, example)
    reduced = reduced_loss(example, hypothesis, kind)
    return VerificationReport.compare(
        name=f"loss-equality-{kind.value}",
        lhs=float(original),
        rhs=float(reduced),
        witness={
            "example": example.model_dump(mode="json"),
            "hypothesis": hypothesis.model_dump(mode="json"),
            "original_loss": original,
            "reduced_loss": reduced,
        },
    )
