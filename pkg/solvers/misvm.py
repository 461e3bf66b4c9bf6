import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from core.errors import EmptySampleError, LabelRangeError, SolverError
from core.losses import pack_bags
from models import LinearWeights, MILExample, ReducedSample, SolverConfig, SolverResult
from .objective import ConvexMilProblem, group_argmax, objective_misvm, objective_from_packed, project_ball
from .qp import solve_mil_qp
from .subgradient import projected_subgradient

logger = logging.getLogger(__name__)

BagSample = Union[ReducedSample, Sequence[MILExample]]


@dataclass
class ConvexRun:
    w: np.ndarray
    objective: float
    iterations: int
    trace: list[float]
    converged: bool


def _examples(sample: BagSample) -> tuple[MILExample, ...]:
    if isinstance(sample, ReducedSample):
        return sample.examples
    return tuple(sample)


def _weights(w: np.ndarray, config: SolverConfig) -> LinearWeights:
    cap = config.lambda_cap
    return LinearWeights.from_array(w, lambda_cap=cap if cap is not None else math.inf)


def solve_convex(problem: ConvexMilProblem, config: SolverConfig, x0: Optional[np.ndarray] = None) -> ConvexRun:
    """Субградиентный разогрев, затем (если polish) точное решение QP"""
    if x0 is None:
        x0 = np.zeros(problem.dim)
    steps = config.warm_start_iters if config.polish else config.max_iters
    max_norm = float(np.max(np.linalg.norm(problem.rows, axis=1))) if problem.rows.size else 0.0
    step0 = config.step_scale / (1.0 + config.c_reg * max_norm)

    run = projected_subgradient(
        problem.value,
        problem.subgradient,
        x0,
        steps=steps,
        step0=step0,
        lambda_cap=config.lambda_cap,
        tol=config.tol,
        trace_every=config.trace_every,
    )
    result = ConvexRun(w=run.x, objective=run.objective, iterations=run.iterations,
                       trace=list(run.trace), converged=run.converged)
    if not config.polish:
        return result

    try:
        polished = solve_mil_qp(problem, config.lambda_cap)
    except SolverError as e:
        logger.warning(f"QP polishing failed, keeping the subgradient iterate: {str(e)}")
        return result
    polished = project_ball(polished, config.lambda_cap)
    value = problem.value(polished)
    result.converged = True
    if value <= result.objective:
        result.w, result.objective = polished, value
        result.trace.append(value)
    else:
        logger.debug(f"Polished objective {value:.10g} above warm start {result.objective:.10g}")
    return result


def train_oneclass_misvm(sample: BagSample, config: SolverConfig = SolverConfig()) -> SolverResult:
    """Одноклассовый MI-SVM: все метки -1, задача выпуклая, глобальный оптимум"""
    examples = _examples(sample)
    if not examples:
        raise EmptySampleError("cannot train on an empty sample")
    positive = [i for i, ex in enumerate(examples) if ex.label != -1]
    if positive:
        raise LabelRangeError(f"one-class MI-SVM needs all labels -1, bag {positive[0]} is +1")

    X, starts, _ = pack_bags(examples)
    problem = ConvexMilProblem(X, starts, config.c_reg)
    run = solve_convex(problem, config)
    weights = _weights(run.w, config)
    objective = objective_misvm(examples, weights, config.c_reg)
    logger.info(f"One-class MI-SVM on {len(examples)} bags: objective {objective:.8g}, "
                f"{run.iterations} subgradient steps")
    return SolverResult(
        weights=weights,
        objective=objective,
        iterations=run.iterations,
        objective_trace=tuple(run.trace),
        converged=run.converged,
        solver="oneclass",
    )


def _witness_problem(
    X: np.ndarray, starts: np.ndarray, labels: np.ndarray, w: np.ndarray, c_reg: float
) -> ConvexMilProblem:
    """Фиксирует свидетелей положительных мешков и строит выпуклую подзадачу"""
    sizes = np.diff(np.append(starts, X.shape[0]))
    _, first = group_argmax(X @ w, starts)
    rows, group_starts = [], []
    offset = 0
    for i, label in enumerate(labels):
        if label < 0:
            block = X[starts[i]:starts[i] + sizes[i]]
        else:
            block = -X[first[i]][None, :]
        group_starts.append(offset)
        rows.append(block)
        offset += block.shape[0]
    return ConvexMilProblem(np.concatenate(rows, axis=0), np.asarray(group_starts), c_reg)


def _cccp(
    X: np.ndarray, starts: np.ndarray, labels: np.ndarray, w0: np.ndarray, config: SolverConfig
) -> ConvexRun:
    w = project_ball(np.array(w0, dtype=float), config.lambda_cap)
    objective = objective_from_packed(X, starts, labels, w, config.c_reg)
    trace = [objective]
    converged = False
    outer = 0
    for outer in range(1, config.max_outer_iters + 1):
        problem = _witness_problem(X, starts, labels, w, config.c_reg)
        candidate = solve_convex(problem, config, x0=w).w
        candidate_objective = objective_from_packed(X, starts, labels, candidate, config.c_reg)
        if candidate_objective > objective:
            # Погрешность подзадачи не должна нарушать монотонность
            converged = True
            break
        decrease = objective - candidate_objective
        w, objective = candidate, candidate_objective
        trace.append(objective)
        logger.debug(f"CCCP iteration {outer}: objective {objective:.10g}")
        if decrease < config.dc_epsilon:
            converged = True
            break
    return ConvexRun(w=w, objective=objective, iterations=outer, trace=trace, converged=converged)


def train_binary_misvm_dc(sample: BagSample, config: SolverConfig = SolverConfig()) -> SolverResult:
    """MI-SVM со смешанными метками через DC-программирование (CCCP).

    Стартовые точки: w = 0 и config.restarts случайных точек из seed;
    побеждает запуск с наименьшей целевой функцией.
    """
    examples = _examples(sample)
    if not examples:
        raise EmptySampleError("cannot train on an empty sample")
    if all(ex.label == -1 for ex in examples):
        logger.info("All bags are negative, using the one-class solver")
        return train_oneclass_misvm(examples, config)

    X, starts, labels = pack_bags(examples)
    rng = np.random.default_rng(config.seed)
    initial_points = [np.zeros(X.shape[1])]
    for _ in range(config.restarts):
        direction = rng.standard_normal(X.shape[1])
        initial_points.append(direction / np.linalg.norm(direction))

    best: Optional[ConvexRun] = None
    for restart, w0 in enumerate(initial_points):
        run = _cccp(X, starts, labels, w0, config)
        logger.debug(f"Restart {restart}: objective {run.objective:.10g} after {run.iterations} outer iterations")
        if best is None or run.objective < best.objective:
            best = run

    weights = _weights(best.w, config)
    objective = objective_misvm(examples, weights, config.c_reg)
    if not best.converged:
        logger.warning(f"DC MI-SVM hit max_outer_iters={config.max_outer_iters} without converging")
    logger.info(f"DC MI-SVM on {len(examples)} bags: objective {objective:.8g}, {best.iterations} outer iterations")
    return SolverResult(
        weights=weights,
        objective=objective,
        iterations=best.iterations,
        objective_trace=tuple(best.trace),
        converged=best.converged,
        solver="dc",
    )


def train_reduced(sample: BagSample, config: SolverConfig = SolverConfig()) -> SolverResult:
    """Выбор решателя по меткам: все -1 -> одноклассовый, иначе DC"""
    examples = _examples(sample)
    if examples and all(ex.label == -1 for ex in examples):
        logger.info(f"Dispatching {len(examples)} negative bags to the one-class solver")
        return train_oneclass_misvm(examples, config)
    logger.info(f"Dispatching {len(examples)} mixed-label bags to the DC solver")
    return train_binary_misvm_dc(examples, config)
