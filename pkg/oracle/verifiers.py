import logging
import math
from typing import Sequence, Union

import numpy as np

from analysis.bounds import lcl_risk_scale
from analysis.rademacher import draw_sigmas, per_draw_suprema
from core.differences import mcl_difference_batch, trl_difference_vectors
from core.errors import DimensionMismatchError, EmptySampleError, LabelRangeError
from core.losses import lcl_losses_batch, loss_matrix, mcl_losses_batch, mil_loss_matrix
from datagen.generators import draw_lcl, planted_multiclass
from datagen.utils import sample_ball
from models import (
    GenConfig,
    HypothesisGrid,
    Instance,
    LCLExample,
    LinearWeights,
    LossKind,
    MCLExample,
    MILExample,
    MulticlassWeights,
    ProblemKind,
    SolverResult,
    TRLExample,
    VerificationReport,
)
from reductions.checks import check_loss_equality
from reductions.sample import reduce_sample
from solvers.objective import objective_misvm
from .erm import loss_sums

logger = logging.getLogger(__name__)

MIN_RESCALING_DRAWS = 10_000
RESCALING_STANDARD_ERRORS = 4.0
CONVEXITY_SLACK = 1e-9
NORM_TRANSPORT_SLACK = 1e-12

FINITE_GRID_NOTE = "equality checked over a finite hypothesis grid, not the continuous class"


def _log(report: VerificationReport) -> VerificationReport:
    if report.passed:
        logger.info(f"Check {report.name} passed: lhs={report.lhs:.10g}, rhs={report.rhs:.10g}")
    else:
        logger.warning(f"Check {report.name} FAILED: lhs={report.lhs:.10g}, rhs={report.rhs:.10g}, "
                       f"tolerance={report.tolerance:.3g}")
    return report


def _reduced_sums(sample: Sequence, kind: ProblemKind, points: np.ndarray) -> np.ndarray:
    """Суммы l_b по S' для образов точек сетки.

    Образ гипотезы - сама точка: β^{-1} тождественно для TRL, а для MCL/LCL
    точки сетки уже хранят W построчно сплющенной, т.е. ω = flatten(W).
    """
    reduced = reduce_sample(sample, kind)
    if reduced.n == 0:
        return np.zeros(points.shape[0], dtype=np.int64)
    return mil_loss_matrix(points, reduced.examples).sum(axis=1)


def verify_erm_equality(sample: Sequence, kind: ProblemKind, grid: HypothesisGrid) -> VerificationReport:
    """Равенство минимумов ERM в исходном и сведенном пространствах.

    Дополнительно проверяется, что β(argmin') достигает исходного минимума.
    Сравниваются целочисленные суммы потерь.
    """
    kind = ProblemKind(kind)
    if len(sample) == 0:
        raise EmptySampleError("cannot verify ERM equality on an empty sample")
    original = loss_sums(sample, kind, grid)
    reduced = _reduced_sums(sample, kind, grid.points)
    original_min = int(original.min())
    reduced_min = int(reduced.min())
    reduced_argmin = int(np.argmin(reduced))
    # При совпадении минимумов сравниваем исходный риск в β(argmin')
    rhs = int(original[reduced_argmin]) if reduced_min == original_min else reduced_min
    return _log(VerificationReport.compare(
        name=f"erm-equality-{kind.value}",
        lhs=float(original_min),
        rhs=float(rhs),
        witness={
            "original_min": original_min,
            "original_argmin": int(np.argmin(original)),
            "reduced_min": reduced_min,
            "reduced_argmin": reduced_argmin,
            "original_at_reduced_argmin": int(original[reduced_argmin]),
            "grid": grid.description,
        },
        note=FINITE_GRID_NOTE,
    ))


def verify_erm_inequality(
    sample: Sequence, kind: ProblemKind, grid: HypothesisGrid, keep_every: int = 2
) -> VerificationReport:
    """Диагностика без сюръективности: образ берется только с подсетки points[::keep_every].

    Ожидается лишь min по исходной сетке ≤ min по образу подсетки.
    """
    kind = ProblemKind(kind)
    if keep_every < 2:
        raise ValueError("keep_every must be at least 2 to make the image a strict subgrid")
    if len(sample) == 0:
        raise EmptySampleError("cannot verify ERM inequality on an empty sample")
    original = loss_sums(sample, kind, grid)
    reduced = _reduced_sums(sample, kind, grid.points[::keep_every])
    return _log(VerificationReport.compare(
        name=f"erm-inequality-{kind.value}",
        lhs=float(original.min()),
        rhs=float(reduced.min()),
        relation="le",
        witness={"original_min": int(original.min()), "reduced_min": int(reduced.min()),
                 "keep_every": keep_every},
        note=FINITE_GRID_NOTE,
    ))


def verify_rademacher_equality(
    sample: Sequence, kind: ProblemKind, grid: HypothesisGrid, sigma_draws: int, seed: int
) -> VerificationReport:
    """Для каждого σ sup по сетке Σσ_i l_i совпадает в обоих пространствах.

    σ тянется для исходной выборки и ограничивается на мешки через source_indices;
    пропущенные примеры имеют нулевую потерю в обоих пространствах.
    lhs - число несовпавших σ, rhs - 0.
    """
    kind = ProblemKind(kind)
    n = len(sample)
    if n == 0:
        raise EmptySampleError("cannot verify Rademacher equality on an empty sample")
    sigmas = draw_sigmas(n, sigma_draws, seed)
    original = per_draw_suprema(loss_matrix(kind, grid.points, sample), sigmas)

    reduced_sample = reduce_sample(sample, kind)
    reduced_losses = np.zeros((grid.size, n), dtype=np.int64)
    if reduced_sample.n:
        reduced_losses[:, list(reduced_sample.source_indices)] = mil_loss_matrix(grid.points, reduced_sample.examples)
    reduced = per_draw_suprema(reduced_losses, sigmas)

    mismatched = np.flatnonzero(original != reduced)
    witness = None
    if mismatched.size:
        first = int(mismatched[0])
        witness = {
            "draw": first,
            "sigma": sigmas[first].tolist(),
            "original_sup": int(original[first]),
            "reduced_sup": int(reduced[first]),
        }
    return _log(VerificationReport.compare(
        name=f"rademacher-equality-{kind.value}",
        lhs=float(mismatched.size),
        rhs=0.0,
        witness=witness,
        note=(f"{sigma_draws} draws, estimates {original.mean() / n:.10g} vs {reduced.mean() / n:.10g}; "
              f"{FINITE_GRID_NOTE}"),
    ))


def _weights_array(W: Union[MulticlassWeights, np.ndarray]) -> np.ndarray:
    if isinstance(W, MulticlassWeights):
        return W.to_array()
    return np.atleast_2d(np.asarray(W, dtype=float))


def verify_risk_rescaling(
    cfg: GenConfig, W: Union[MulticlassWeights, np.ndarray], n_mc: int, seed: int
) -> VerificationReport:
    """|R̂^MC - scale(θ, k) R̂^LC| ≤ 4 √(v̂ / n_mc), v̂ - выборочная дисперсия разности.

    Истинные метки берутся из генератора и решателям не передаются.
    """
    if n_mc < MIN_RESCALING_DRAWS:
        raise ValueError(f"risk rescaling check needs n_mc >= {MIN_RESCALING_DRAWS}, got {n_mc}")
    weights = _weights_array(W)
    if weights.shape != (cfg.k, cfg.d):
        raise DimensionMismatchError(f"weights have shape {weights.shape}, expected {(cfg.k, cfg.d)}")

    rng = np.random.default_rng(seed)
    planted = planted_multiclass(rng, cfg.k, cfg.d)
    X, y, gamma, y_true = draw_lcl(rng, cfg, planted, n_mc)

    mc = mcl_losses_batch(weights, X, y_true)
    lc = lcl_losses_batch(weights, X, y, gamma)
    scale = lcl_risk_scale(cfg.theta, cfg.k)
    diff = mc - scale * lc
    tolerance = RESCALING_STANDARD_ERRORS * math.sqrt(float(np.var(diff, ddof=1)) / n_mc)
    return _log(VerificationReport.compare(
        name="risk-rescaling",
        lhs=float(mc.mean()),
        rhs=float(scale * lc.mean()),
        tolerance=tolerance,
        witness={"theta": cfg.theta, "k": cfg.k, "n_mc": n_mc, "seed": seed, "scale": scale,
                 "mean_difference": float(diff.mean())},
        note=f"Monte-Carlo, {RESCALING_STANDARD_ERRORS:g} standard errors",
    ))


def _hinge_objectives(examples: Sequence[MILExample], points: np.ndarray, c_reg: float) -> np.ndarray:
    hinge = mil_loss_matrix(points, examples, LossKind.HINGE)
    return 0.5 * np.sum(points * points, axis=1) + c_reg * hinge.sum(axis=1)


def verify_convexity_witness(
    examples: Sequence[MILExample], c_reg: float, pairs: int, seed: int, radius: float = 1.0
) -> VerificationReport:
    """f(t u + (1 - t) v) ≤ t f(u) + (1 - t) f(v) на случайных парах и t ~ U[0, 1].

    lhs - наибольшее нарушение (абсолютное), допуск CONVEXITY_SLACK.
    """
    rng = np.random.default_rng(seed)
    dim = examples[0].dim
    u = sample_ball(rng, pairs, dim, radius)
    v = sample_ball(rng, pairs, dim, radius)
    t = rng.random(pairs)
    f_u = _hinge_objectives(examples, u, c_reg)
    f_v = _hinge_objectives(examples, v, c_reg)
    f_mix = _hinge_objectives(examples, t[:, None] * u + (1 - t)[:, None] * v, c_reg)
    gap = f_mix - (t * f_u + (1 - t) * f_v)
    worst = int(np.argmax(gap))
    return _log(VerificationReport.compare(
        name="convexity-witness",
        lhs=float(gap[worst]),
        rhs=0.0,
        tolerance=CONVEXITY_SLACK,
        relation="le",
        witness={"u": u[worst].tolist(), "v": v[worst].tolist(), "t": float(t[worst]),
                 "violation": float(gap[worst])},
        note=f"{pairs} random pairs in the radius-{radius:g} ball",
    ))


def verify_solver_optimality(
    sample: Sequence[MILExample],
    result: SolverResult,
    grid: HypothesisGrid,
    c_reg: float,
    tol: float = 1e-4,
    pairs: int = 1000,
    seed: int = 0,
) -> VerificationReport:
    """Целевая функция в w решателя ≤ минимума по сетке + tol (одноклассовый случай).

    Целевая функция пересчитывается по result.weights, а не берется из result.
    Если нарушена выпуклость на случайных парах, возвращается отчет о выпуклости.
    """
    examples = tuple(sample)
    if not examples:
        raise EmptySampleError("cannot verify optimality on an empty sample")
    if any(ex.label != -1 for ex in examples):
        raise LabelRangeError("solver optimality oracle needs an all-negative sample")
    w = result.weights.to_array()
    if w.shape[0] != grid.dim:
        raise DimensionMismatchError(f"grid dimension {grid.dim} != weight dimension {w.shape[0]}")

    radius = max(1.0, float(np.max(np.linalg.norm(grid.points, axis=1))), float(np.linalg.norm(w)))
    convexity = verify_convexity_witness(examples, c_reg, pairs, seed, radius)
    if not convexity.passed:
        return convexity

    objectives = _hinge_objectives(examples, grid.points, c_reg)
    best = int(np.argmin(objectives))
    achieved = objective_misvm(examples, result.weights, c_reg)
    return _log(VerificationReport.compare(
        name="solver-optimality",
        lhs=achieved,
        rhs=float(objectives[best]),
        tolerance=tol,
        relation="le",
        witness={"weights": w.tolist(), "grid_best": grid.points[best].tolist(), "grid_index": best,
                 "reported_objective": result.objective},
        note=f"grid of {grid.size} points; convexity held on {pairs} pairs",
    ))


def _draw(rng: np.random.Generator, shape, rounded: bool) -> np.ndarray:
    values = rng.standard_normal(shape)
    # Округление до десятых дает равные оценки и нули на границе
    return np.round(values, 1) if rounded else values


def _random_example(rng: np.random.Generator, kind: ProblemKind, d: int, k: int, rounded: bool):
    if kind == ProblemKind.TRL:
        size = int(rng.integers(1, 9))
        items = _draw(rng, (size, d), rounded)
        target = int(rng.integers(0, size))
        if rounded and size > 1:
            items[(target + 1) % size] = items[target]
        return TRLExample(items=tuple(Instance.from_array(x) for x in items), target_index=target)
    x = Instance.from_array(_draw(rng, d, rounded))
    y = int(rng.integers(1, k + 1))
    if kind == ProblemKind.MCL:
        return MCLExample(x=x, y=y, k=k)
    return LCLExample(x=x, y=y, gamma=bool(rng.integers(0, 2)), k=k)


def _random_hypothesis(rng: np.random.Generator, kind: ProblemKind, d: int, k: int, rounded: bool):
    if kind == ProblemKind.TRL:
        return LinearWeights.from_array(_draw(rng, d, rounded))
    W = _draw(rng, (k, d), rounded)
    if rounded:
        W[int(rng.integers(0, k))] = W[int(rng.integers(0, k))]
    return MulticlassWeights.from_array(W)


def verify_loss_equality_random(kind: ProblemKind, draws: int, seed: int) -> VerificationReport:
    """Тождество потерь на случайных парах (пример, гипотеза): d ≤ 5, k ≤ 6, |A| ≤ 8.

    Половина пар берется на десятичной сетке с принудительными равенствами оценок.
    lhs - число нарушений, rhs - 0; в witness - первое нарушение.
    """
    kind = ProblemKind(kind)
    if kind == ProblemKind.MIL:
        raise ValueError("loss equality is defined for trl, mcl and lcl")
    rng = np.random.default_rng(seed)
    violations = 0
    witness = None
    for draw in range(draws):
        d = int(rng.integers(1, 6))
        k = int(rng.integers(2, 7))
        rounded = draw % 2 == 1
        example = _random_example(rng, kind, d, k, rounded)
        hypothesis = _random_hypothesis(rng, kind, d, k, rounded)
        report = check_loss_equality(example, hypothesis, kind)
        if not report.passed:
            violations += 1
            if witness is None:
                witness = {"draw": draw, **report.witness}
    return _log(VerificationReport.compare(
        name=f"loss-equality-random-{kind.value}",
        lhs=float(violations),
        rhs=0.0,
        witness=witness,
        note=f"{draws} random draws, seed={seed}",
    ))


def verify_norm_transport(
    kind: ProblemKind, n_instances: int, seed: int, r_norm: float = 1.0, k: int = 3, d: int = 2, set_size: int = 8
) -> VerificationReport:
    """‖x'‖ ≤ 2R для TRL и ≤ √2 R для MCL/LCL на сгенерированных экземплярах S'"""
    kind = ProblemKind(kind)
    if kind == ProblemKind.TRL and set_size < 2:
        raise ValueError(f"norm transport for trl needs set_size >= 2, got {set_size}")
    rng = np.random.default_rng(seed)
    if kind == ProblemKind.TRL:
        sets = math.ceil(n_instances / (set_size - 1))
        items = sample_ball(rng, sets * set_size, d, r_norm).reshape(sets, set_size, d)
        targets = rng.integers(0, set_size, size=sets)
        diffs = np.concatenate([trl_difference_vectors(block, int(t)) for block, t in zip(items, targets)])
        bound = 2 * r_norm
    elif kind in (ProblemKind.MCL, ProblemKind.LCL):
        count = math.ceil(n_instances / (k - 1))
        X = sample_ball(rng, count, d, r_norm)
        y = rng.integers(1, k + 1, size=count)
        diffs = mcl_difference_batch(X, y, k).reshape(-1, d * k)
        bound = math.sqrt(2) * r_norm
    else:
        raise ValueError("norm transport is defined for trl, mcl and lcl")
    norms = np.linalg.norm(diffs, axis=1)
    worst = int(np.argmax(norms))
    return _log(VerificationReport.compare(
        name=f"norm-transport-{kind.value}",
        lhs=float(norms[worst]),
        rhs=bound,
        tolerance=NORM_TRANSPORT_SLACK,
        relation="le",
        witness={"instance": diffs[worst].tolist(), "norm": float(norms[worst])},
        note=f"{diffs.shape[0]} reduced instances",
    ))
