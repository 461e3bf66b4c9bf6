import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .objective import project_ball

logger = logging.getLogger(__name__)


@dataclass
class SubgradientRun:
    x: np.ndarray
    objective: float
    iterations: int
    trace: list[float] = field(default_factory=list)
    converged: bool = False


def projected_subgradient(
    value: Callable[[np.ndarray], float],
    subgradient: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    steps: int,
    step0: float,
    lambda_cap: Optional[float] = None,
    tol: float = 1e-6,
    trace_every: int = 100,
) -> SubgradientRun:
    """Проекционный субградиентный спуск с шагом step0/√t и усреднением итераций.

    Раз в trace_every шагов сравниваются текущая и усредненная точки, лучшая
    запоминается (субградиентный метод не монотонен). Остановка по
    относительному изменению лучшего значения между контрольными точками.
    """
    x = project_ball(np.array(x0, dtype=float), lambda_cap)
    avg = x.copy()
    best_x, best_value = x.copy(), value(x)
    trace = [best_value]
    last_checkpoint = best_value
    converged = False
    t = 0

    for t in range(1, steps + 1):
        x = project_ball(x - (step0 / np.sqrt(t)) * subgradient(x), lambda_cap)
        avg += (x - avg) / (t + 1)

        if t % trace_every and t != steps:
            continue
        for candidate in (x, avg):
            candidate_value = value(candidate)
            if candidate_value < best_value:
                best_x, best_value = candidate.copy(), candidate_value
        trace.append(best_value)
        if abs(last_checkpoint - best_value) <= tol * max(1.0, abs(last_checkpoint)):
            converged = True
            break
        last_checkpoint = best_value

    logger.debug(f"Subgradient descent stopped after {t} steps, objective {best_value:.6g}")
    return SubgradientRun(x=best_x, objective=best_value, iterations=t, trace=trace, converged=converged)
