import math
from typing import Sequence

import numpy as np

from datagen.utils import sample_ball
from models import HypothesisGrid


def _radius(lambda_cap: float) -> float:
    return 1.0 if math.isinf(lambda_cap) else lambda_cap


def _assemble(dim: int, extra: Sequence[np.ndarray], body: np.ndarray, description: str, lambda_cap: float) -> HypothesisGrid:
    parts = [np.zeros((1, dim))]
    if len(extra):
        parts.append(np.atleast_2d(np.asarray(extra, dtype=float)).reshape(-1, dim))
    parts.append(body.reshape(-1, dim))
    return HypothesisGrid(points=np.concatenate(parts, axis=0), description=description, lambda_cap=lambda_cap)


def sphere_grid(
    dim: int,
    directions: int,
    radii: int,
    lambda_cap: float = 1.0,
    seed: int = 0,
    extra: Sequence[np.ndarray] = (),
) -> HypothesisGrid:
    """Ноль, extra, затем направления × радиусы Λ/radii, 2Λ/radii, ..., Λ.

    При dim = 2 направления равномерны по окружности, иначе - случайные единичные векторы.
    """
    if directions < 1 or radii < 1:
        raise ValueError("sphere grid needs at least one direction and one radius")
    if dim == 2:
        angles = 2 * np.pi * np.arange(directions) / directions
        units = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    else:
        units = np.random.default_rng(seed).standard_normal((directions, dim))
        units /= np.linalg.norm(units, axis=1, keepdims=True)
    steps = _radius(lambda_cap) * np.arange(1, radii + 1) / radii
    body = steps[:, None, None] * units[None, :, :]
    return _assemble(
        dim, extra, body, f"sphere grid: {directions} directions x {radii} radii, seed={seed}", lambda_cap
    )


def random_grid(
    dim: int,
    size: int,
    seed: int = 0,
    lambda_cap: float = 1.0,
    extra: Sequence[np.ndarray] = (),
) -> HypothesisGrid:
    """Ровно size точек: ноль, extra и случайные точки, равномерные в шаре радиуса Λ"""
    fixed = 1 + len(extra)
    if size < fixed:
        raise ValueError(f"grid size {size} cannot hold zero and {len(extra)} extra points")
    rng = np.random.default_rng(seed)
    body = sample_ball(rng, size - fixed, dim, _radius(lambda_cap))
    return _assemble(dim, extra, body, f"random grid: {size} points, seed={seed}", lambda_cap)
