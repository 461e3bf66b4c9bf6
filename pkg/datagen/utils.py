import numpy as np


def sample_ball(rng: np.random.Generator, n: int, d: int, r_norm: float) -> np.ndarray:
    """n точек, равномерно распределенных в шаре радиуса r_norm в R^d"""
    directions = rng.standard_normal((n, d))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    # Нулевой вектор нормали имеет вероятность 0, но деление на него дало бы nan
    norms[norms == 0] = 1.0
    radii = r_norm * rng.random((n, 1)) ** (1.0 / d)
    points = directions / norms * radii
    # Гарантия ‖x‖ ≤ r_norm и после округления
    over = np.linalg.norm(points, axis=1) > r_norm
    points[over] *= r_norm / np.linalg.norm(points[over], axis=1, keepdims=True)
    return points


def unit_vector(rng: np.random.Generator, size: int) -> np.ndarray:
    v = rng.standard_normal(size)
    norm = np.linalg.norm(v)
    if norm == 0:
        v = np.zeros(size)
        v[0] = 1.0
        return v
    return v / norm


def top_gap(scores: np.ndarray) -> np.ndarray:
    """Разность между наибольшей и второй по величине оценкой по последней оси"""
    if scores.shape[-1] < 2:
        return np.full(scores.shape[:-1], np.inf)
    ordered = np.sort(scores, axis=-1)
    return ordered[..., -1] - ordered[..., -2]
