import numpy as np
import pytest
from hypothesis import settings

from robustreg import FiniteClass, LabeledExample, PerturbationMap

settings.register_profile("deterministic", derandomize=True, deadline=None)
settings.load_profile("deterministic")


def make_class(rows) -> FiniteClass:
    return FiniteClass(np.asarray(rows, dtype=float))


def labeled(pairs):
    return [LabeledExample(x, y) for x, y in pairs]


@pytest.fixture
def identity_u():
    def build(n):
        return PerturbationMap.identity(n)
    return build
