import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from analysis import (
    assemble_bound,
    bound_params_for_sample,
    deviation_term,
    draw_sigmas,
    generalization_bound,
    lcl_risk_scale,
    mil_complexity_bound,
    rademacher_exact,
    rademacher_from_losses,
    rademacher_mc_estimate,
)
from core import EmptySampleError
from models import BoundParams, DeviationMode, LCLExample, LinearWeights, MCLExample, ProblemKind
from oracle import sphere_grid
from reductions import reduce_sample


def params(**overrides) -> BoundParams:
    values = dict(lipschitz=1.0, r_norm=1.0, lambda_cap=1.0, n=4, total_bag_instances=8,
                  union_instances=8, eta=2.0)
    values.update(overrides)
    return BoundParams(**values)


# Сложность класса G


def test_complexity_first_expression():
    bound = mil_complexity_bound(params())
    assert bound.expr1 == pytest.approx(7 * math.log(4) / 2)
    assert bound.expr1 == pytest.approx(4.852, abs=1e-3)


def test_complexity_second_expression_is_the_minimum():
    bound = mil_complexity_bound(params(total_bag_instances=16, union_instances=16))
    assert bound.expr2 == pytest.approx(math.sqrt(2 * math.log(16)) / 2)
    assert bound.expr2 == pytest.approx(1.177, abs=1e-3)
    assert bound.value == bound.expr2


def test_complexity_degenerate_sample():
    bound = mil_complexity_bound(params(n=1, total_bag_instances=1, union_instances=1))
    assert bound.expr1 == bound.expr2 == bound.value == 0.0
    assert bound.expr1_degenerate and bound.expr2_degenerate


def test_complexity_scales_with_norms():
    base = mil_complexity_bound(params(total_bag_instances=16, union_instances=16))
    scaled = mil_complexity_bound(params(total_bag_instances=16, union_instances=16, lambda_cap=3.0))
    assert scaled.expr2 == pytest.approx(3 * base.expr2)


def test_bound_params_reject_union_above_total():
    with pytest.raises(ValueError):
        params(union_instances=9)


# Слагаемое отклонения и масштаб


def test_deviation_literal():
    assert deviation_term(1000, 0.05, DeviationMode.LITERAL) == pytest.approx(0.3)


def test_deviation_log_form():
    assert deviation_term(2, 1 / math.e, DeviationMode.LOG_FORM) == pytest.approx(1.5)


@pytest.mark.parametrize("delta", [0.0, 1.0, -0.1, 2.0])
def test_deviation_rejects_delta(delta):
    with pytest.raises(ValueError):
        deviation_term(10, delta)


@given(st.floats(min_value=1e-6, max_value=0.999), st.sampled_from(list(DeviationMode)))
def test_deviation_vanishes_with_n(delta, mode):
    assert deviation_term(10 ** 12, delta, mode) < deviation_term(10, delta, mode)


@pytest.mark.parametrize("theta, k, expected", [(1.0, 7, 1.0), (0.0, 5, 4.0), (0.5, 4, 1.5), (0.3, 2, 1.0)])
def test_lcl_risk_scale(theta, k, expected):
    assert lcl_risk_scale(theta, k) == pytest.approx(expected)


@given(st.floats(min_value=0, max_value=1), st.integers(min_value=2, max_value=50))
def test_lcl_risk_scale_at_least_one(theta, k):
    assert lcl_risk_scale(theta, k) >= 1.0 - 1e-12


def test_assemble_bound():
    assert assemble_bound(0.1, 0.2, 0.3, 1.0) == pytest.approx(0.8)
    assert assemble_bound(0.0, 0.0, 0.0, 4.0) == 0.0
    assert assemble_bound(0.1, 0.2, 0.3, 2.0) == pytest.approx(1.6)


# Полная оценка по выборке


def test_bound_params_for_reduced_sample():
    sample = reduce_sample([MCLExample.of((1, 0), 1, 3), MCLExample.of((1, 0), 2, 3)], ProblemKind.MCL)
    p = bound_params_for_sample(sample, eta=2.0, lambda_cap=1.0)
    assert p.n == 2
    assert p.total_bag_instances == 4
    assert p.union_instances == 4
    assert p.r_norm == pytest.approx(math.sqrt(2))


def test_bound_params_empty_sample():
    with pytest.raises(EmptySampleError):
        bound_params_for_sample(reduce_sample([], ProblemKind.MCL), eta=1.0, lambda_cap=1.0)


def test_generalization_bound_lcl_applies_scale():
    sample = reduce_sample(
        [LCLExample.of((1, 0), 1, False, 3), LCLExample.of((0, 1), 2, True, 3)], ProblemKind.LCL
    )
    p = bound_params_for_sample(sample, eta=2.0, lambda_cap=1.0)
    report = generalization_bound(sample, LinearWeights.from_array(np.zeros(6)), p, theta=0.0)
    assert report.empirical_risk == 1.0
    assert report.scale == pytest.approx(2.0)
    assert report.bound_log == pytest.approx(2.0 * (1.0 + 2 * report.complexity.value + report.deviation_log))
    assert report.bound_literal >= report.bound_log


def test_generalization_bound_lcl_requires_theta():
    sample = reduce_sample([LCLExample.of((1, 0), 1, True, 3)], ProblemKind.LCL)
    p = bound_params_for_sample(sample, eta=1.0, lambda_cap=1.0)
    with pytest.raises(ValueError):
        generalization_bound(sample, LinearWeights.from_array(np.zeros(6)), p)


# Сложность Радемахера


def test_rademacher_exact_two_hypotheses():
    # sup(0, σ) в среднем равен 1/2
    losses = np.array([[0], [1]])
    assert rademacher_exact(losses) == pytest.approx(0.5)


def test_rademacher_exact_single_hypothesis_is_zero():
    assert rademacher_exact(np.ones((1, 6), dtype=int)) == pytest.approx(0.0)


def test_rademacher_exact_rejects_large_n():
    with pytest.raises(ValueError):
        rademacher_exact(np.zeros((2, 40), dtype=int))


def test_rademacher_monte_carlo_agrees_with_exact(rng):
    losses = rng.integers(0, 2, size=(12, 8))
    exact = rademacher_exact(losses)
    estimate = rademacher_from_losses(losses, draw_sigmas(8, 20_000, seed=3))
    assert abs(estimate.value - exact) <= 4 * estimate.stderr + 1e-12


def test_draw_sigmas_is_seeded():
    first = draw_sigmas(5, 10, seed=11)
    assert set(np.unique(first)) <= {-1, 1}
    assert np.array_equal(first, draw_sigmas(5, 10, seed=11))


def test_rademacher_mc_estimate_on_sample():
    sample = [MCLExample.of((1.0, float(i % 3) - 1.0), 1 + i % 3, 3) for i in range(6)]
    grid = sphere_grid(6, directions=16, radii=1, seed=2)
    value = rademacher_mc_estimate(sample, grid, ProblemKind.MCL, trials=500, seed=0)
    assert -1.0 <= value <= 1.0
    assert value == rademacher_mc_estimate(sample, grid, ProblemKind.MCL, trials=500, seed=0)


def test_rademacher_mc_estimate_empty_sample():
    with pytest.raises(EmptySampleError):
        rademacher_mc_estimate([], np.zeros((1, 2)), ProblemKind.MIL, trials=10, seed=0)
