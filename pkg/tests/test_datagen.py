import numpy as np
import pytest

from core import GenerationError, empirical_risk_mcl, empirical_risk_trl
from datagen import GENERATORS, draw_mcl, gen_lcl, gen_mcl, gen_mil, gen_trl, generate, sample_ball
from datagen.generators import MAX_REJECTION_ROUNDS
from datagen.utils import top_gap
from models import GenConfig, ProblemKind


@pytest.mark.parametrize("kind", list(ProblemKind))
def test_generation_is_deterministic(kind):
    cfg = GenConfig(seed=7, n=30, d=3, k=4)
    assert generate(kind, cfg) == generate(kind, cfg)
    assert generate(kind, cfg) != generate(kind, cfg.model_copy(update={"seed": 8}))


def test_every_kind_has_a_generator():
    assert set(GENERATORS) == set(ProblemKind)


def test_sample_ball_respects_radius(rng):
    points = sample_ball(rng, 5000, 3, 2.5)
    assert points.shape == (5000, 3)
    assert np.all(np.linalg.norm(points, axis=1) <= 2.5)


def test_planted_hypotheses_have_unit_norm():
    assert gen_trl(GenConfig(d=4)).planted.norm == pytest.approx(1.0)
    assert gen_mcl(GenConfig(d=4, k=5)).planted.norm == pytest.approx(1.0)


def test_mcl_labels_follow_planted_hypothesis():
    sample = gen_mcl(GenConfig(seed=3, n=200, d=5, k=4))
    assert len(sample.examples) == 200
    assert {ex.k for ex in sample.examples} == {4}
    assert all(1 <= ex.y <= 4 for ex in sample.examples)
    assert empirical_risk_mcl(sample.examples, sample.planted) == 0.0


def test_trl_targets_follow_planted_hypothesis():
    sample = gen_trl(GenConfig(seed=1, n=100, d=3, set_size=5))
    assert all(len(ex.items) == 5 for ex in sample.examples)
    assert empirical_risk_trl(sample.examples, sample.planted) == 0.0


def test_mil_labels_split_at_threshold():
    sample = gen_mil(GenConfig(seed=2, n=101, d=2, bag_size=3))
    w = sample.planted.to_array()
    for ex in sample.examples:
        score = float(np.max(ex.bag.to_array() @ w))
        assert ex.label == (1 if score > sample.threshold else -1)
    labels = [ex.label for ex in sample.examples]
    assert labels.count(-1) == 51


def test_lcl_theta_fraction():
    sample = gen_lcl(GenConfig(seed=5, n=2000, d=3, k=4, theta=0.3))
    fraction = np.mean([ex.gamma for ex in sample.examples])
    # 5 стандартных отклонений биномиального распределения
    assert abs(fraction - 0.3) <= 5 * np.sqrt(0.3 * 0.7 / 2000)


def test_lcl_complementary_labels_differ_from_truth():
    sample = gen_lcl(GenConfig(seed=4, n=500, d=2, k=3, theta=0.5))
    assert len(sample.true_labels) == 500
    for ex, truth in zip(sample.examples, sample.true_labels):
        if ex.gamma:
            assert ex.y == truth
        else:
            assert ex.y != truth
            assert 1 <= ex.y <= 3


def test_lcl_complementary_labels_are_uniform():
    sample = gen_lcl(GenConfig(seed=9, n=6000, d=2, k=3, theta=0.0))
    # Для k = 3 каждая из двух дополнительных меток выбирается с вероятностью 1/2
    offsets = [(ex.y - truth) % 3 for ex, truth in zip(sample.examples, sample.true_labels)]
    share = offsets.count(1) / len(offsets)
    assert abs(share - 0.5) <= 5 * np.sqrt(0.25 / 6000)


def test_lcl_theta_one_has_only_ordinary_labels():
    sample = gen_lcl(GenConfig(seed=1, n=50, theta=1.0))
    assert all(ex.gamma for ex in sample.examples)
    assert tuple(ex.y for ex in sample.examples) == sample.true_labels


def test_margin_rejection(rng):
    cfg = GenConfig(d=2, k=3, margin=0.05)
    W = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]]) / np.sqrt(4)
    X, y = draw_mcl(rng, cfg, W, 300)
    assert np.all(top_gap(X @ W.T) >= 0.05)
    assert np.array_equal(y, np.argmax(X @ W.T, axis=1) + 1)


def test_margin_rejection_gives_up():
    # Зазор больше диаметра шара недостижим
    cfg = GenConfig(seed=0, n=5, d=2, k=3, margin=10.0)
    with pytest.raises(GenerationError, match=str(MAX_REJECTION_ROUNDS)):
        gen_mcl(cfg)
