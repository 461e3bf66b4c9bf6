import numpy as np
import pytest

from models import Bag, MILExample, SolverConfig


@pytest.fixture
def solver_config() -> SolverConfig:
    # Короткий разогрев: точность обеспечивает QP
    return SolverConfig(warm_start_iters=200)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def single_negative_bag() -> list[MILExample]:
    return [MILExample(bag=Bag.of([(1, 0)]), label=-1)]


@pytest.fixture
def two_instance_negative_bag() -> list[MILExample]:
    return [MILExample(bag=Bag.of([(1, 0), (0, 1)]), label=-1)]


@pytest.fixture
def symmetric_positive_bag() -> list[MILExample]:
    return [MILExample(bag=Bag.of([(1, 0), (-1, 0)]), label=1)]
