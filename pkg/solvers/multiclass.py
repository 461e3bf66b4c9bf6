import logging
import math
from typing import Sequence

import numpy as np

from core.errors import DimensionMismatchError, EmptySampleError, LabelRangeError, SolverError
from models import MCLExample, MulticlassWeights, SolverConfig
from .objective import project_ball
from .qp import solve_multiclass_qp
from .subgradient import projected_subgradient

logger = logging.getLogger(__name__)


def _arrays(sample: Sequence[MCLExample]) -> tuple[np.ndarray, np.ndarray, int]:
    if len(sample) == 0:
        raise EmptySampleError("cannot train on an empty sample")
    classes = {ex.k for ex in sample}
    if len(classes) != 1:
        raise DimensionMismatchError(f"sample mixes class counts: {sorted(classes)}")
    k = classes.pop()
    bad = [ex.y for ex in sample if not 1 <= ex.y <= k]
    if bad:
        raise LabelRangeError(f"label {bad[0]} outside 1..{k}")
    X = np.asarray([ex.x.coords for ex in sample], dtype=float)
    y = np.asarray([ex.y for ex in sample], dtype=int)
    return X, y, k


def _hinge_terms(W: np.ndarray, X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """max(0, 1 + max_{y' != y} <w_y' - w_y, x>) и лучший конкурент (наименьший индекс)"""
    scores = X @ W.T
    rows = np.arange(X.shape[0])
    true = scores[rows, y - 1]
    rival_scores = scores.copy()
    rival_scores[rows, y - 1] = -np.inf
    rivals = np.argmax(rival_scores, axis=1)
    return np.maximum(0.0, 1.0 + rival_scores[rows, rivals] - true), rivals


def objective_multiclass_svm(sample: Sequence[MCLExample], weights, c_reg: float) -> float:
    """½‖W‖² + C Σ_i max(0, 1 + max_{y' != y_i} <w_y' - w_y_i, x_i>)"""
    X, y, k = _arrays(sample)
    W = weights.to_array() if isinstance(weights, MulticlassWeights) else np.asarray(weights, dtype=float)
    if W.shape != (k, X.shape[1]):
        raise DimensionMismatchError(f"weights have shape {W.shape}, expected {(k, X.shape[1])}")
    terms, _ = _hinge_terms(W, X, y)
    return float(0.5 * np.sum(W * W) + c_reg * terms.sum())


def train_multiclass_svm_direct(
    sample: Sequence[MCLExample], config: SolverConfig = SolverConfig()
) -> MulticlassWeights:
    """Многоклассовый SVM (Краммер-Зингер) прямо в пространстве W, без сведения к MIL"""
    X, y, k = _arrays(sample)
    d = X.shape[1]
    c_reg = config.c_reg

    def value(flat: np.ndarray) -> float:
        W = flat.reshape(k, d)
        terms, _ = _hinge_terms(W, X, y)
        return float(0.5 * flat @ flat + c_reg * terms.sum())

    def subgradient(flat: np.ndarray) -> np.ndarray:
        W = flat.reshape(k, d)
        terms, rivals = _hinge_terms(W, X, y)
        grad = W.copy()
        active = terms > 0
        np.add.at(grad, rivals[active], c_reg * X[active])
        np.add.at(grad, y[active] - 1, -c_reg * X[active])
        return grad.ravel()

    steps = config.warm_start_iters if config.polish else config.max_iters
    max_norm = float(np.max(np.linalg.norm(X, axis=1)))
    run = projected_subgradient(
        value,
        subgradient,
        np.zeros(k * d),
        steps=steps,
        step0=config.step_scale / (1.0 + c_reg * math.sqrt(2.0) * max_norm),
        lambda_cap=config.lambda_cap,
        tol=config.tol,
        trace_every=config.trace_every,
    )
    flat, objective = run.x, run.objective

    if config.polish:
        try:
            polished = solve_multiclass_qp(X, y, k, c_reg, config.lambda_cap)
        except SolverError as e:
            logger.warning(f"QP polishing failed, keeping the subgradient iterate: {str(e)}")
        else:
            polished = project_ball(polished.ravel(), config.lambda_cap)
            polished_value = value(polished)
            if polished_value <= objective:
                flat, objective = polished, polished_value

    logger.info(f"Direct multiclass SVM on {len(sample)} examples, k={k}: objective {objective:.8g}")
    cap = config.lambda_cap if config.lambda_cap is not None else math.inf
    return MulticlassWeights.from_array(flat.reshape(k, d), lambda_cap=cap)
