import itertools
import logging
from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from core.errors import EmptySampleError
from core.losses import loss_matrix
from models import HypothesisGrid, LinearWeights, LossKind, MulticlassWeights, ProblemKind

logger = logging.getLogger(__name__)

HypothesisSet = Union[HypothesisGrid, np.ndarray, Sequence[Union[LinearWeights, MulticlassWeights]]]

# Полный перебор σ ∈ {-1, 1}^n допустим только для маленьких выборок
EXACT_MAX_N = 16


class RademacherEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    stderr: float
    trials: int


def hypothesis_points(hypotheses: HypothesisSet) -> np.ndarray:
    """Приводит набор гипотез к матрице (G, dim); W сплющивается по строкам"""
    if isinstance(hypotheses, HypothesisGrid):
        return hypotheses.points
    if isinstance(hypotheses, np.ndarray):
        return np.atleast_2d(hypotheses)
    rows = [h.to_array().ravel() for h in hypotheses]
    if not rows:
        raise EmptySampleError("hypothesis set is empty")
    return np.asarray(rows, dtype=float)


def draw_sigmas(n: int, trials: int, seed: int) -> np.ndarray:
    """Матрица (trials, n) независимых равновероятных знаков ±1"""
    rng = np.random.default_rng(seed)
    return rng.integers(0, 2, size=(trials, n), dtype=np.int64) * 2 - 1


def signed_sums(losses: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    """Σ_i σ_i l_i для каждой пары (σ, h); суммирование в порядке индексов примеров"""
    sums = np.zeros((sigmas.shape[0], losses.shape[0]), dtype=np.result_type(losses, sigmas))
    for i in range(losses.shape[1]):
        sums += np.outer(sigmas[:, i], losses[:, i])
    return sums


def per_draw_suprema(losses: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    """sup_h Σ_i σ_i l(y_i, h(x_i)) для каждого σ (без деления на n)"""
    if losses.shape[0] == 0:
        raise EmptySampleError("hypothesis set is empty")
    return signed_sums(losses, sigmas).max(axis=1)


def rademacher_from_losses(losses: np.ndarray, sigmas: np.ndarray, n: int | None = None) -> RademacherEstimate:
    """Оценка (1/n) E_σ sup_h Σ σ_i l_i по готовой матрице потерь (G, n)"""
    n = losses.shape[1] if n is None else n
    if n == 0:
        raise EmptySampleError("Rademacher complexity of an empty sample is undefined")
    per_draw = per_draw_suprema(losses, sigmas) / n
    trials = per_draw.shape[0]
    total = 0.0
    for value in per_draw:
        total += float(value)
    stderr = float(np.std(per_draw, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return RademacherEstimate(value=total / trials, stderr=stderr, trials=trials)


def rademacher_exact(losses: np.ndarray) -> float:
    """Точное математическое ожидание перебором всех 2^n векторов σ"""
    n = losses.shape[1]
    if n == 0:
        raise EmptySampleError("Rademacher complexity of an empty sample is undefined")
    if n > EXACT_MAX_N:
        raise ValueError(f"exact enumeration is limited to n <= {EXACT_MAX_N}, got n={n}")
    sigmas = np.asarray(list(itertools.product((-1, 1), repeat=n)), dtype=np.int64)
    return float(per_draw_suprema(losses, sigmas).mean() / n)


def rademacher_mc_details(
    sample: Sequence,
    hypotheses: HypothesisSet,
    kind: ProblemKind,
    trials: int,
    seed: int,
    loss: LossKind = LossKind.ZERO_ONE,
) -> RademacherEstimate:
    if len(sample) == 0:
        raise EmptySampleError("Rademacher complexity of an empty sample is undefined")
    if trials < 1:
        raise ValueError("need at least one Monte-Carlo trial")
    points = hypothesis_points(hypotheses)
    losses = loss_matrix(ProblemKind(kind), points, sample, loss)
    estimate = rademacher_from_losses(losses, draw_sigmas(len(sample), trials, seed))
    logger.debug(f"Rademacher estimate {estimate.value:.6g} ± {estimate.stderr:.2g} "
                 f"over {trials} draws and {points.shape[0]} hypotheses")
    return estimate


def rademacher_mc_estimate(
    sample: Sequence,
    hypotheses: HypothesisSet,
    kind: ProblemKind,
    trials: int,
    seed: int,
    loss: LossKind = LossKind.ZERO_ONE,
) -> float:
    """Монте-Карло оценка эмпирической сложности Радемахера класса потерь.

    σ применяется к значениям потерь l(y_i, h(x_i)), а не к сырым оценкам.
    """
    return rademacher_mc_details(sample, hypotheses, kind, trials, seed, loss).value
