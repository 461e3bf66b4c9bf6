import logging
from typing import Optional

import cvxpy as cp
import numpy as np

from core.errors import SolverError
from .objective import ConvexMilProblem

logger = logging.getLogger(__name__)

ACCEPTED_STATUSES = (cp.OPTIMAL, cp.OPTIMAL_INACCURATE)


def _solve(problem: cp.Problem) -> None:
    try:
        problem.solve(solver=cp.CLARABEL)
    except cp.SolverError as e:
        logger.warning(f"QP solver failed: {str(e)}")
        raise SolverError(f"QP solver failed: {str(e)}")
    if problem.status not in ACCEPTED_STATUSES:
        logger.warning(f"QP solver returned status {problem.status}")
        raise SolverError(f"QP solver returned status {problem.status}")


def solve_mil_qp(problem: ConvexMilProblem, lambda_cap: Optional[float] = None) -> np.ndarray:
    """Точное решение выпуклой задачи как QP:

        min ½‖w‖² + C Σ ξ_g   при  <w, a> + 1 ≤ ξ_g  для всех a ∈ g,  ξ ≥ 0
    """
    w = cp.Variable(problem.dim)
    xi = cp.Variable(problem.n_groups, nonneg=True)
    constraints = [problem.rows @ w + 1 <= problem.selection_matrix() @ xi]
    if lambda_cap is not None:
        constraints.append(cp.norm(w, 2) <= lambda_cap)
    qp = cp.Problem(cp.Minimize(0.5 * cp.sum_squares(w) + problem.c_reg * cp.sum(xi)), constraints)
    _solve(qp)
    return np.asarray(w.value, dtype=float)


def solve_multiclass_qp(
    X: np.ndarray, y: np.ndarray, k: int, c_reg: float, lambda_cap: Optional[float] = None
) -> np.ndarray:
    """Многоклассовый SVM прямо в пространстве W (k x d); y в 1..k"""
    n, d = X.shape
    onehot = np.zeros((n, k))
    onehot[np.arange(n), np.asarray(y, dtype=int) - 1] = 1.0

    W = cp.Variable((k, d))
    xi = cp.Variable(n, nonneg=True)
    scores = X @ W.T
    true_scores = cp.reshape(cp.sum(cp.multiply(onehot, scores), axis=1), (n, 1), order="F")
    ones_row = np.ones((1, k))
    # Для истинного класса ограничение вырождается в 0 ≤ ξ_i
    constraints = [
        scores - true_scores @ ones_row + (1.0 - onehot) <= cp.reshape(xi, (n, 1), order="F") @ ones_row
    ]
    if lambda_cap is not None:
        constraints.append(cp.norm(W, "fro") <= lambda_cap)
    qp = cp.Problem(cp.Minimize(0.5 * cp.sum_squares(W) + c_reg * cp.sum(xi)), constraints)
    _solve(qp)
    return np.asarray(W.value, dtype=float)
