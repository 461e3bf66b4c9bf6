import logging
from typing import Callable, Optional

import numpy as np

from core.errors import GenerationError
from models import (
    Bag,
    GenConfig,
    GeneratedSample,
    Instance,
    LCLExample,
    LinearWeights,
    MCLExample,
    MILExample,
    MulticlassWeights,
    ProblemKind,
    TRLExample,
)
from .utils import sample_ball, top_gap, unit_vector

logger = logging.getLogger(__name__)

# Предел раундов повторной выборки при отсечении по зазору
MAX_REJECTION_ROUNDS = 1000


def _redraw(
    rng: np.random.Generator,
    data: np.ndarray,
    draw: Callable[[int], np.ndarray],
    ok: Callable[[np.ndarray], np.ndarray],
    what: str,
) -> np.ndarray:
    """Перевыбирает строки data, не прошедшие ok, пока все не пройдут"""
    bad = np.flatnonzero(~ok(data))
    rounds = 0
    while bad.size:
        if rounds >= MAX_REJECTION_ROUNDS:
            raise GenerationError(
                f"margin rejection for {what} did not finish after {MAX_REJECTION_ROUNDS} rounds, "
                f"{bad.size} rows still inside the margin"
            )
        data[bad] = draw(bad.size)
        bad = bad[~ok(data[bad])]
        rounds += 1
    if rounds:
        logger.debug(f"Margin rejection for {what} took {rounds} rounds")
    return data


def _margin_filter(margin: Optional[float], gap: Callable[[np.ndarray], np.ndarray]):
    if not margin:
        return lambda data: np.ones(data.shape[0], dtype=bool)
    return lambda data: gap(data) >= margin


# Функции уровня массивов: используются генераторами и проверками Монте-Карло


def draw_mil(
    rng: np.random.Generator, cfg: GenConfig, w: np.ndarray, n: int, threshold: Optional[float] = None
) -> tuple[np.ndarray, np.ndarray, float]:
    """Мешки (n, bag_size, d), метки sign(max_x <w, x> - b) и порог b.

    Если threshold не задан, b - медиана оценок мешков первой выборки.
    """
    def draw(m: int) -> np.ndarray:
        return sample_ball(rng, m * cfg.bag_size, cfg.d, cfg.r_norm).reshape(m, cfg.bag_size, cfg.d)

    bags = draw(n)
    if threshold is None:
        threshold = float(np.median((bags @ w).max(axis=1)))
    keep = _margin_filter(cfg.margin, lambda data: np.abs((data @ w).max(axis=1) - threshold))
    bags = _redraw(rng, bags, draw, keep, "mil bags")
    scores = (bags @ w).max(axis=1)
    labels = np.where(scores > threshold, 1, -1).astype(np.int64)
    return bags, labels, threshold


def draw_trl(rng: np.random.Generator, cfg: GenConfig, w: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Наборы (n, set_size, d) и индексы целевых объектов argmax <w, x>"""
    def draw(m: int) -> np.ndarray:
        return sample_ball(rng, m * cfg.set_size, cfg.d, cfg.r_norm).reshape(m, cfg.set_size, cfg.d)

    keep = _margin_filter(cfg.margin, lambda data: top_gap(data @ w))
    items = _redraw(rng, draw(n), draw, keep, "trl item sets")
    return items, np.argmax(items @ w, axis=1).astype(np.int64)


def draw_mcl(
    rng: np.random.Generator, cfg: GenConfig, W: np.ndarray, n: int
) -> tuple[np.ndarray, np.ndarray]:
    """Признаки (n, d) и метки 1..k по argmax <w_j, x> (наименьший индекс при равенстве)"""
    def draw(m: int) -> np.ndarray:
        return sample_ball(rng, m, cfg.d, cfg.r_norm)

    keep = _margin_filter(cfg.margin, lambda data: top_gap(data @ W.T))
    X = _redraw(rng, draw(n), draw, keep, "mcl features")
    return X, np.argmax(X @ W.T, axis=1).astype(np.int64) + 1


def draw_lcl(
    rng: np.random.Generator, cfg: GenConfig, W: np.ndarray, n: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(X, y, gamma, y_true): с вероятностью theta обычная метка, иначе дополнительная.

    Дополнительная метка равномерна среди k-1 меток, отличных от истинной.
    """
    X, y_true = draw_mcl(rng, cfg, W, n)
    gamma = rng.random(n) < cfg.theta
    r = rng.integers(1, cfg.k, size=n)
    complementary = r + (r >= y_true)
    y = np.where(gamma, y_true, complementary).astype(np.int64)
    return X, y, gamma, y_true


def planted_linear(rng: np.random.Generator, d: int) -> np.ndarray:
    return unit_vector(rng, d)


def planted_multiclass(rng: np.random.Generator, k: int, d: int) -> np.ndarray:
    """Матрица W* (k, d) с единичной нормой Фробениуса"""
    return unit_vector(rng, k * d).reshape(k, d)


# Генераторы уровня примеров


def gen_mil(cfg: GenConfig) -> GeneratedSample:
    rng = np.random.default_rng(cfg.seed)
    w = planted_linear(rng, cfg.d)
    bags, labels, threshold = draw_mil(rng, cfg, w, cfg.n)
    examples = tuple(
        MILExample(bag=Bag.from_array(bag), label=int(label)) for bag, label in zip(bags, labels)
    )
    logger.info(f"Generated {cfg.n} mil bags (seed={cfg.seed}, threshold={threshold:.6g})")
    return GeneratedSample(
        kind=ProblemKind.MIL,
        examples=examples,
        planted=LinearWeights.from_array(w),
        threshold=threshold,
    )


def gen_trl(cfg: GenConfig) -> GeneratedSample:
    rng = np.random.default_rng(cfg.seed)
    w = planted_linear(rng, cfg.d)
    items, targets = draw_trl(rng, cfg, w, cfg.n)
    examples = tuple(
        TRLExample(items=tuple(Instance.from_array(x) for x in block), target_index=int(t))
        for block, t in zip(items, targets)
    )
    logger.info(f"Generated {cfg.n} trl sets of size {cfg.set_size} (seed={cfg.seed})")
    return GeneratedSample(kind=ProblemKind.TRL, examples=examples, planted=LinearWeights.from_array(w))


def gen_mcl(cfg: GenConfig) -> GeneratedSample:
    rng = np.random.default_rng(cfg.seed)
    W = planted_multiclass(rng, cfg.k, cfg.d)
    X, y = draw_mcl(rng, cfg, W, cfg.n)
    examples = tuple(
        MCLExample(x=Instance.from_array(x), y=int(label), k=cfg.k) for x, label in zip(X, y)
    )
    logger.info(f"Generated {cfg.n} mcl examples with k={cfg.k} (seed={cfg.seed})")
    return GeneratedSample(kind=ProblemKind.MCL, examples=examples, planted=MulticlassWeights.from_array(W))


def gen_lcl(cfg: GenConfig) -> GeneratedSample:
    rng = np.random.default_rng(cfg.seed)
    W = planted_multiclass(rng, cfg.k, cfg.d)
    X, y, gamma, y_true = draw_lcl(rng, cfg, W, cfg.n)
    examples = tuple(
        LCLExample(x=Instance.from_array(x), y=int(label), gamma=bool(g), k=cfg.k)
        for x, label, g in zip(X, y, gamma)
    )
    logger.info(f"Generated {cfg.n} lcl examples with k={cfg.k}, theta={cfg.theta} "
                f"({int(gamma.sum())} ordinary labels, seed={cfg.seed})")
    return GeneratedSample(
        kind=ProblemKind.LCL,
        examples=examples,
        planted=MulticlassWeights.from_array(W),
        true_labels=tuple(int(t) for t in y_true),
    )


GENERATORS: dict[ProblemKind, Callable[[GenConfig], GeneratedSample]] = {
    ProblemKind.MIL: gen_mil,
    ProblemKind.TRL: gen_trl,
    ProblemKind.MCL: gen_mcl,
    ProblemKind.LCL: gen_lcl,
}


def generate(kind: ProblemKind, cfg: GenConfig) -> GeneratedSample:
    return GENERATORS[ProblemKind(kind)](cfg)
