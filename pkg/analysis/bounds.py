import logging
import math
from typing import Optional

import numpy as np

from core.errors import EmptySampleError
from core.losses import pack_bags
from core.risks import empirical_risk_mil
from models import (
    BoundParams,
    BoundReport,
    ComplexityBound,
    DeviationMode,
    LinearWeights,
    LossKind,
    ProblemKind,
    ReducedSample,
)

logger = logging.getLogger(__name__)


def mil_complexity_bound(p: BoundParams) -> ComplexityBound:
    """Две несравнимые оценки сложности Радемахера класса G, O-константы равны 1.

    expr1 = LrΛ log2(4 L² r² Λ² n Σ|B_i|) ln(L² n) / √n
    expr2 = LrΛ √(η ln|∪B_i|) / √n

    Выражение, у которого аргумент логарифма ≤ 1, считается вырожденным и равно 0.
    Результат - порядок величины, а не гарантированная граница.
    """
    scale = p.lipschitz * p.r_norm * p.lambda_cap
    root_n = math.sqrt(p.n)

    log2_arg = 4 * p.lipschitz ** 2 * p.r_norm ** 2 * p.lambda_cap ** 2 * p.n * p.total_bag_instances
    ln_arg = p.lipschitz ** 2 * p.n
    expr1_degenerate = log2_arg <= 1 or ln_arg <= 1
    expr1 = 0.0 if expr1_degenerate else scale * math.log2(log2_arg) * math.log(ln_arg) / root_n

    expr2_degenerate = p.union_instances <= 1
    expr2 = 0.0 if expr2_degenerate else scale * math.sqrt(p.eta * math.log(p.union_instances)) / root_n

    return ComplexityBound(
        expr1=expr1,
        expr2=expr2,
        value=min(expr1, expr2),
        expr1_degenerate=expr1_degenerate,
        expr2_degenerate=expr2_degenerate,
    )


def deviation_term(n: int, delta: float, mode: DeviationMode = DeviationMode.LOG_FORM) -> float:
    """3√((1/δ)/2n) в буквальной форме или 3√(ln(1/δ)/2n) в логарифмической"""
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    numerator = 1 / delta if DeviationMode(mode) == DeviationMode.LITERAL else math.log(1 / delta)
    return 3 * math.sqrt(numerator / (2 * n))


def lcl_risk_scale(theta: float, k: int) -> float:
    """(k-1)/(θ(k-2)+1): переводит риск LCL в обычный многоклассовый риск"""
    if not 0 <= theta <= 1:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    if k < 2:
        raise ValueError(f"need at least 2 classes, got k={k}")
    return (k - 1) / (theta * (k - 2) + 1)


def assemble_bound(empirical_risk: float, complexity: float, deviation: float, scale: float = 1.0) -> float:
    """scale * (R̂ + 2ℜ + отклонение)"""
    return scale * (empirical_risk + 2 * complexity + deviation)


def bound_params_for_sample(
    sample: ReducedSample,
    eta: float,
    lambda_cap: float,
    lipschitz: float = 1.0,
    delta: float = 0.05,
    r_norm: Optional[float] = None,
) -> BoundParams:
    """BoundParams по сведенной выборке; |∪B_i| считается по точному совпадению координат.

    По умолчанию r_norm - наибольшая норма экземпляра в S', она уже учитывает
    перенос нормы (2R для TRL, √2R для MCL/LCL).
    """
    if sample.n == 0:
        raise EmptySampleError("cannot derive bound parameters from an empty sample")
    X, _, _ = pack_bags(sample.examples)
    if r_norm is None:
        r_norm = float(np.max(np.linalg.norm(X, axis=1)))
        if r_norm == 0:
            raise ValueError("all reduced instances are zero; supply r_norm explicitly")
    return BoundParams(
        lipschitz=lipschitz,
        r_norm=r_norm,
        lambda_cap=lambda_cap,
        n=sample.n,
        total_bag_instances=int(X.shape[0]),
        union_instances=int(np.unique(X, axis=0).shape[0]),
        eta=eta,
        delta=delta,
    )


def generalization_bound(
    sample: ReducedSample,
    weights: LinearWeights,
    params: BoundParams,
    theta: Optional[float] = None,
) -> BoundReport:
    """Итоговая оценка риска исходной задачи через риск и сложность сведенной"""
    empirical = empirical_risk_mil(sample.examples, weights, LossKind.HINGE)
    complexity = mil_complexity_bound(params)
    deviation_literal = deviation_term(params.n, params.delta, DeviationMode.LITERAL)
    deviation_log = deviation_term(params.n, params.delta, DeviationMode.LOG_FORM)

    scale = 1.0
    if sample.kind == ProblemKind.LCL:
        if theta is None:
            raise ValueError("LCL bounds need theta, the ordinary-label probability")
        scale = lcl_risk_scale(theta, sample.k)

    report = BoundReport(
        empirical_risk=empirical,
        complexity=complexity,
        deviation_literal=deviation_literal,
        deviation_log=deviation_log,
        scale=scale,
        bound_literal=assemble_bound(empirical, complexity.value, deviation_literal, scale),
        bound_log=assemble_bound(empirical, complexity.value, deviation_log, scale),
        params=params,
        theta=theta,
    )
    logger.info(f"Bound for {sample.kind.value}: {report.bound_log:.6g} (log-form), "
                f"{report.bound_literal:.6g} (literal)")
    return report
