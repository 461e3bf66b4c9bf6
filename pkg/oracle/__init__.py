from .grid import random_grid, sphere_grid
from .erm import ErmResult, brute_force_erm, loss_sums, point_to_hypothesis
from .verifiers import (
    verify_convexity_witness,
    verify_erm_equality,
    verify_erm_inequality,
    verify_loss_equality_random,
    verify_norm_transport,
    verify_rademacher_equality,
    verify_risk_rescaling,
    verify_solver_optimality,
)
