import logging
from abc import ABC, abstractmethod
from typing import Any, Optional

import opentracing
from opentracing.ext import tags as ext_tags

from . import constants
from .errors import NonTerminationError, ParameterError, ProtocolError
from .instance import Instance, PairSet
from .metrics import MetricsFactory, RunnerMetrics
from .reporter import BaseReporter, NullReporter
from .transcript import Transcript


default_logger = logging.getLogger(__name__)


class Policy(ABC):
    """
    Chooses the next question from the instance and the pairs observed so
    far, or returns None to stop. A policy keeps per-run state; use a fresh
    instance for every run.
    """

    name = ''

    @abstractmethod
    def next(
        self, inst: Instance, pairs: PairSet, transcript: Transcript
    ) -> Optional[int]:
        pass

    def __str__(self) -> str:
        return self.name or self.__class__.__name__


class Oracle(ABC):
    """Answers questions, usually on behalf of a hidden target hypothesis."""

    name = ''

    @abstractmethod
    def respond(self, inst: Instance, query: int, pairs: PairSet) -> int:
        pass

    def __str__(self) -> str:
        return self.name or self.__class__.__name__


def _is_id(value: Any, size: int) -> bool:
    return (
        isinstance(value, int) and not isinstance(value, bool)
        and 0 <= value < size
    )


def run_policy(
    inst: Instance,
    policy: Policy,
    oracle: Oracle,
    step_limit: int = constants.DEFAULT_STEP_LIMIT,
    reporter: Optional[BaseReporter] = None,
    tracer: Optional[opentracing.Tracer] = None,
    metrics_factory: Optional[MetricsFactory] = None,
    logger: Optional[logging.Logger] = None,
) -> Transcript:
    """
    Ask the policy for questions and the oracle for answers until the policy
    stops. More than ``step_limit`` questions raise NonTerminationError.
    """
    if step_limit < 1:
        raise ParameterError('step_limit must be positive, got %r' % (step_limit,))

    logger = logger or default_logger
    reporter = reporter or NullReporter()
    tracer = tracer or opentracing.global_tracer()
    metrics = RunnerMetrics(metrics_factory or MetricsFactory())

    tags = {
        'policy': str(policy),
        'oracle': str(oracle),
        'step_limit': step_limit,
        'hypotheses': inst.n_hypotheses,
        'queries': inst.n_queries,
        'alpha': inst.alpha,
    }
    transcript = Transcript()
    reporter.start_run(str(policy), str(oracle))

    with tracer.start_active_span('run_policy', tags=tags) as scope:
        span = scope.span
        try:
            _loop(inst, policy, oracle, step_limit, transcript, reporter,
                  span, logger)
        except Exception as e:
            metrics.runs_err(1)
            span.set_tag(ext_tags.ERROR, True)
            span.log_kv({'event': 'error', 'error.object': e})
            raise

        span.set_tag('total_cost', str(transcript.total_cost))
        span.set_tag('steps', len(transcript))

    metrics.runs_ok(1)
    metrics.queries(len(transcript))
    metrics.cost_units(float(transcript.total_cost))
    reporter.finish_run(transcript)
    logger.info(
        '%s against %s: %d questions, total cost %s',
        policy, oracle, len(transcript), transcript.total_cost,
    )
    return transcript


def _loop(
    inst: Instance,
    policy: Policy,
    oracle: Oracle,
    step_limit: int,
    transcript: Transcript,
    reporter: BaseReporter,
    span: opentracing.Span,
    logger: logging.Logger,
) -> None:
    while True:
        pairs = transcript.pairs
        query = policy.next(inst, pairs, transcript)
        if query is None:
            return
        if len(transcript) >= step_limit:
            raise NonTerminationError(
                '%s did not stop within %d questions' % (policy, step_limit)
            )
        if not _is_id(query, inst.n_queries):
            raise ProtocolError(
                '%s asked unknown question %r' % (policy, query)
            )

        response = oracle.respond(inst, query, pairs)
        if not _is_id(response, inst.n_responses):
            raise ProtocolError(
                '%s gave unknown response %r to q%d' % (oracle, response, query)
            )

        before = inst.version_mask(pairs)
        step = transcript.append(query, response, inst.costs[query])
        if before and not inst.version_mask(transcript.pairs):
            logger.warning(
                'Response r%d to q%d is inconsistent with every hypothesis',
                response, query,
            )

        index = len(transcript) - 1
        reporter.report_step(index, step)
        span.log_kv({'event': 'step', 'query': query, 'response': response})
        logger.debug('Step %d: asked q%d -> r%d', index, query, response)
