import pytest
from opentracing.mocktracer import MockTracer

from interactive_cover.instgen import (
    gen_cartoon, gen_identify_hard_instance, gen_naive_greedy_counterexample,
)
from interactive_cover.metrics import InMemoryMetricsFactory

from .factories import random_instance


@pytest.fixture(scope='function')
def tracer():
    return MockTracer()


@pytest.fixture(scope='function')
def metrics_factory():
    return InMemoryMetricsFactory()


@pytest.fixture(scope='session')
def naive_greedy_instance():
    return gen_naive_greedy_counterexample(alpha=3, cheap=1, expensive=10)


@pytest.fixture(scope='session')
def identify_hard_instance():
    return gen_identify_hard_instance(n=5, cheap=1, expensive=10)


@pytest.fixture(scope='session')
def cartoon():
    return gen_cartoon()


@pytest.fixture(scope='session')
def cartoon_instance(cartoon):
    return cartoon[2]


@pytest.fixture(scope='session')
def set_cover_sets():
    return [{1, 2}, {2, 3}, {3}]


@pytest.fixture
def make_random_instance():
    return random_instance
