from .metrics import MetricsFactory  # noqa
from .metrics import InMemoryMetricsFactory  # noqa
from .metrics import RunnerMetrics  # noqa
from .metrics import VerifyMetrics  # noqa
from .metrics import ExperimentMetrics  # noqa
