import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core import DimensionMismatchError, ReductionError, bag_score, lcl_loss, zero_one_binary
from models import (
    Instance,
    LCLExample,
    LinearWeights,
    MCLExample,
    MILExample,
    MulticlassWeights,
    ProblemKind,
    TRLExample,
)
from reductions import (
    LCLReduction,
    check_loss_equality,
    flatten,
    get_reduction,
    lcl_reduce,
    mcl_embed,
    mcl_reduce,
    mcl_restore,
    reduce_sample,
    trl_reduce,
    trl_restore,
)


def bag_points(ex: MILExample) -> list[tuple[float, ...]]:
    return [x.coords for x in ex.bag.instances]


# TRL


def test_trl_reduce_difference_vectors():
    reduced = trl_reduce(TRLExample.of([(1, 0), (0, 1), (1, 1)], 2))
    assert reduced.label == -1
    assert bag_points(reduced) == [(0.0, -1.0), (-1.0, 0.0)]


def test_trl_reduce_singleton_is_skipped():
    assert trl_reduce(TRLExample.of([(5, 5)], 0)) is None


def test_trl_reduce_duplicate_item_gives_zero_vector():
    reduced = trl_reduce(TRLExample.of([(1, 0), (1, 0)], 0))
    assert bag_points(reduced) == [(0.0, 0.0)]


def test_trl_restore_is_identity():
    w = LinearWeights.of(1, 2)
    assert trl_restore(w) == w


# MCL


@pytest.mark.parametrize(
    "x, y, k, expected",
    [
        ((1, 2), 2, 3, (0, 0, 1, 2, 0, 0)),
        ((0, 0), 1, 3, (0, 0, 0, 0, 0, 0)),
        ((3,), 1, 2, (3, 0)),
    ],
)
def test_mcl_embed(x, y, k, expected):
    assert mcl_embed(Instance(coords=x), y, k).coords == tuple(float(v) for v in expected)


def test_mcl_embed_label_out_of_range():
    with pytest.raises(ReductionError):
        mcl_embed(Instance(coords=(1, 2)), 4, 3)


def test_mcl_reduce_bag():
    reduced = mcl_reduce(MCLExample.of((1, 2), 2, 3))
    assert reduced.label == -1
    assert bag_points(reduced) == [(1, 2, -1, -2, 0, 0), (0, 0, -1, -2, 1, 2)]


def test_mcl_reduce_zero_features():
    reduced = mcl_reduce(MCLExample.of((0, 0), 1, 4))
    assert reduced.bag.size == 3
    assert np.all(reduced.bag.to_array() == 0)


def test_mcl_reduce_two_classes():
    assert bag_points(mcl_reduce(MCLExample.of((1,), 1, 2))) == [(-1.0, 1.0)]


def test_mcl_restore():
    W = mcl_restore(LinearWeights.of(1, 2, 3, 4), 2)
    assert W.rows == ((1.0, 2.0), (3.0, 4.0))
    assert W.norm == pytest.approx(LinearWeights.of(1, 2, 3, 4).norm)
    assert np.all(mcl_restore(LinearWeights.of(0, 0, 0, 0), 2).to_array() == 0)


def test_mcl_restore_rejects_indivisible_dimension():
    with pytest.raises(DimensionMismatchError):
        mcl_restore(LinearWeights.of(1, 2, 3), 2)


@given(st.lists(st.floats(min_value=-10, max_value=10), min_size=6, max_size=6), st.sampled_from([2, 3, 6]))
def test_flatten_inverts_restore(values, k):
    omega = LinearWeights.of(*values)
    assert flatten(mcl_restore(omega, k)) == omega


# LCL


def test_lcl_reduce_ordinary_label_matches_mcl():
    reduced = lcl_reduce(LCLExample.of((1, 2), 2, True, 3))
    assert reduced == mcl_reduce(MCLExample.of((1, 2), 2, 3))


def test_lcl_reduce_complementary_label():
    reduced = lcl_reduce(LCLExample.of((1,), 1, False, 2))
    assert reduced.label == 1
    assert bag_points(reduced) == [(-1.0, 1.0)]
# Десятичная сетка дает точные и почти точные равенства оценок
tenths = st.integers(min_value=-20, max_value=20).map(lambda v: v / 10)


def vectors(d: int):
    return st.lists(tenths, min_size=d, max_size=d)


@st.composite
def multiclass_cases(draw):
    k = draw(st.integers(min_value=2, max_value=4))
    d = draw(st.integers(min_value=1, max_value=3))
    rows = draw(st.lists(vectors(d), min_size=k, max_size=k))
    if draw(st.booleans()):
        # Две одинаковые строки W: равные оценки классов
        j = draw(st.integers(min_value=0, max_value=k - 1))
        rows[(j + 1) % k] = rows[j]
    x = draw(vectors(d))
    y = draw(st.integers(min_value=1, max_value=k))
    return MulticlassWeights.of(rows), x, y, k


@st.composite
def ranking_cases(draw):
    d = draw(st.integers(min_value=1, max_value=3))
    items = draw(st.lists(vectors(d), min_size=1, max_size=5))
    target = draw(st.integers(min_value=0, max_value=len(items) - 1))
    if len(items) > 1 and draw(st.booleans()):
        # Копия целевого объекта: равные оценки при любом w
        items[(target + 1) % len(items)] = items[target]
    return LinearWeights.of(*draw(vectors(d))), TRLExample.of(items, target)


@given(multiclass_cases())
@settings(max_examples=300)
def test_mcl_loss_identity_on_decimal_grid(case):
    W, x, y, k = case
    assert check_loss_equality(MCLExample.of(x, y, k), W, ProblemKind.MCL).passed


@given(multiclass_cases(), st.booleans())
@settings(max_examples=300)
def test_lcl_loss_identity_on_decimal_grid(case, gamma):
    W, x, y, k = case
    ex = LCLExample.of(x, y, gamma, k)
    assert check_loss_equality(ex, W, ProblemKind.LCL).passed
    reduced = lcl_reduce(ex)
    assert lcl_loss(W, ex) == zero_one_binary(reduced.label, bag_score(flatten(W), reduced.bag))


@given(ranking_cases())
@settings(max_examples=300)
def test_trl_loss_identity_on_decimal_grid(case):
    w, ex = case
    assert check_loss_equality(ex, w, ProblemKind.TRL).passed


@given(
    st.lists(st.floats(min_value=-5, max_value=5), min_size=6, max_size=6),
    st.lists(st.floats(min_value=-5, max_value=5), min_size=2, max_size=2),
    st.integers(min_value=1, max_value=3),
    st.booleans(),
)
@settings(max_examples=200)
def test_lcl_loss_equals_reduced_loss(w, x, y, gamma):
    W = MulticlassWeights.from_array(np.asarray(w).reshape(3, 2))
    ex = LCLExample.of(x, y, gamma, 3)
    reduced = lcl_reduce(ex)
    assert lcl_loss(W, ex) == zero_one_binary(reduced.label, bag_score(flatten(W), reduced.bag))


@pytest.mark.parametrize(
    "example, hypothesis, kind",
    [
        (MCLExample.of((0.1, 0.2), 1, 2), MulticlassWeights.of([(1, 1), (1, 1)]), ProblemKind.MCL),
        (LCLExample.of((0.1, 0.2), 1, False, 2), MulticlassWeights.of([(1, 1), (1, 1)]), ProblemKind.LCL),
        (TRLExample.of([(0.1, 0.1, 1.3), (0.7, 0.7, 0.7)], 0), LinearWeights.of(0.1, 0.2, 0.3), ProblemKind.TRL),
    ],
)
def test_loss_identity_at_rounding_ties(example, hypothesis, kind):
    report = check_loss_equality(example, hypothesis, kind)
    assert report.passed
    assert report.lhs == report.rhs


def test_reduction_registry():
    assert isinstance(get_reduction(ProblemKind.LCL), LCLReduction)
    with pytest.raises(ReductionError):
        get_reduction(ProblemKind.MIL)


def test_reduction_lift_and_invert_are_inverse():
    reduction = get_reduction(ProblemKind.MCL)
    W = MulticlassWeights.of([(1, 2), (3, 4), (5, 6)])
    assert reduction.invert(reduction.lift(W), k=3) == W


# reduce_sample


def test_reduce_sample_empty():
    reduced = reduce_sample([], ProblemKind.TRL)
    assert reduced.n == 0
    assert reduced.skipped_count == 0


def test_reduce_sample_mcl():
    sample = [MCLExample.of((1, 0), y, 3) for y in (1, 2, 3)]
    reduced = reduce_sample(sample, ProblemKind.MCL)
    assert reduced.n == 3
    assert all(ex.bag.size == 2 for ex in reduced.examples)
    assert reduced.labels == (-1, -1, -1)
    assert reduced.dim == 6
    assert reduced.k == 3


def test_reduce_sample_counts_skipped_trl_singletons():
    sample = [TRLExample.of([(1, 0), (0, 1)], 0) for _ in range(4)]
    sample.insert(2, TRLExample.of([(1, 1)], 0))
    reduced = reduce_sample(sample, ProblemKind.TRL)
    assert reduced.n == 4
    assert reduced.skipped_count == 1
    assert reduced.source_indices == (0, 1, 3, 4)
    assert reduced.original_size == 5


def test_reduce_sample_rejects_mixed_kinds():
    with pytest.raises(ReductionError):
        reduce_sample([MCLExample.of((1, 0), 1, 2), LCLExample.of((1, 0), 1, True, 2)], ProblemKind.MCL)


def test_reduce_sample_rejects_mixed_dimensions():
    with pytest.raises(DimensionMismatchError):
        reduce_sample([MCLExample.of((1, 0), 1, 2), MCLExample.of((1, 0, 0), 1, 2)], ProblemKind.MCL)


def test_reduce_sample_preserves_order():
    sample = [MCLExample.of((float(i), 1.0), 1 + i % 3, 3) for i in range(6)]
    reduced = reduce_sample(sample, ProblemKind.MCL)
    assert list(reduced.examples) == [mcl_reduce(ex) for ex in sample]


# Тождество потерь


def test_check_loss_equality_trl_example():
    report = check_loss_equality(TRLExample.of([(1, 0), (0, 1)], 0), LinearWeights.of(1, 0), ProblemKind.TRL)
    assert report.passed
    assert report.lhs == report.rhs == 0


def test_check_loss_equality_zero_weights_tie_is_error():
    W = MulticlassWeights.of([(0, 0), (0, 0), (0, 0)])
    report = check_loss_equality(MCLExample.of((0.5, -2.0), 2, 3), W, ProblemKind.MCL)
    assert report.passed
    assert report.lhs == report.rhs == 1
    for gamma in (True, False):
        report = check_loss_equality(LCLExample.of((0.5, -2.0), 2, gamma, 3), W, ProblemKind.LCL)
        assert report.passed and report.lhs == 1


def test_check_loss_equality_singleton_trl():
    report = check_loss_equality(TRLExample.of([(1, 2)], 0), LinearWeights.of(-1, 3), ProblemKind.TRL)
    assert report.passed
    assert report.lhs == 0
