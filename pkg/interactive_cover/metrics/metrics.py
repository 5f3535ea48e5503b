import threading
from typing import Callable, Dict, Optional, Union


Number = Union[int, float]


class MetricsFactory(object):
    """Generates new metrics. The base factory discards every value."""

    def _noop(self, *args):
        pass

    def create_counter(
        self, name: str, tags: Optional[Dict[str, str]] = None
    ) -> Callable[[int], None]:
        """Returns ``increment(value)`` for the counter ``name``"""
        return self._noop

    def create_gauge(
        self, name: str, tags: Optional[Dict[str, str]] = None
    ) -> Callable[[Number], None]:
        """Returns ``update(value)`` for the gauge ``name``"""
        return self._noop


class InMemoryMetricsFactory(MetricsFactory):
    """Keeps counters and gauges in dicts keyed by ``name.tag_value``"""

    def __init__(self) -> None:
        self.counters: Dict[str, int] = {}
        self.gauges: Dict[str, Number] = {}
        self._lock = threading.Lock()

    def create_counter(
        self, name: str, tags: Optional[Dict[str, str]] = None
    ) -> Callable[[int], None]:
        key = self._get_key(name, tags)

        def increment(value: int) -> None:
            with self._lock:
                self.counters[key] = self.counters.get(key, 0) + value
        return increment

    def create_gauge(
        self, name: str, tags: Optional[Dict[str, str]] = None
    ) -> Callable[[Number], None]:
        key = self._get_key(name, tags)

        def update(value: Number) -> None:
            with self._lock:
                self.gauges[key] = value
        return update

    def _get_key(self, name, tags=None):
        if not tags:
            return name
        key = name
        for k in sorted(tags.keys()):
            key = key + '.' + str(k) + '_' + str(tags[k])
        return key


class RunnerMetrics(object):
    """run_policy specific metrics."""
    def __init__(self, metrics_factory: MetricsFactory) -> None:
        self.runs_ok = metrics_factory.create_counter(
            name='icover:runs', tags={'result': 'ok'}
        )
        self.runs_err = metrics_factory.create_counter(
            name='icover:runs', tags={'result': 'err'}
        )
        self.queries = metrics_factory.create_counter(name='icover:queries')
        self.cost_units = metrics_factory.create_gauge(
            name='icover:cost_units'
        )


class VerifyMetrics(object):
    """Brute-force search metrics."""
    def __init__(self, metrics_factory: MetricsFactory) -> None:
        self.brute_states = metrics_factory.create_gauge(
            name='icover:brute_states'
        )


class ExperimentMetrics(object):
    def __init__(self, metrics_factory: MetricsFactory) -> None:
        self.trials = metrics_factory.create_counter(name='icover:trials')
