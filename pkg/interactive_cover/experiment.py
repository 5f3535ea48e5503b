import asyncio
import csv
import logging
import math
import random
from concurrent.futures import Executor
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, TextIO, Tuple

import networkx as nx
import numpy as np
import opentracing

from . import constants
from .errors import ParameterError
from .instance import Instance
from .metrics import ExperimentMetrics, MetricsFactory
from .netapp import (
    DominationIndex, HypothesisClass, build_dominating_instance,
    gen_balls, gen_clusters_class, gen_expanded_clusters, gen_noisy_balls,
    gen_noisy_variants,
)
from .oracles import random_consistent_oracle
from .policies import cover_all_plan, CoverAllPolicy, make_policy
from .runner import Policy, run_policy
from .utils import derive_seed


default_logger = logging.getLogger(__name__)

CLASS_CLUSTERS = 'clusters'
CLASS_NOISY_CLUSTERS = 'noisy-clusters'
CLASS_BALLS = 'balls'
CLASS_NOISY_BALLS = 'noisy-balls'
CLASS_EXPANDED_CLUSTERS = 'expanded-clusters'


def critical_value(df: int) -> float:
    """Two-sided p=.01 critical value of Student's t, next lower tabulated df"""
    if df < 1:
        raise ParameterError('degrees of freedom must be positive, got %r' % df)
    value = constants.T_CRITICAL_P01[0][1]
    for tabulated_df, tabulated_value in constants.T_CRITICAL_P01:
        if tabulated_df > df:
            break
        value = tabulated_value
    return value


def paired_t_test(a: Sequence[float], b: Sequence[float]) -> Tuple[float, bool]:
    """
    Paired t statistic of a - b and whether it is significant at p=.01.
    Constant non-zero differences count as significant, constant zero
    differences give t = 0.
    """
    if len(a) != len(b):
        raise ParameterError(
            'paired samples differ in length: %d and %d' % (len(a), len(b))
        )
    if len(a) < 2:
        raise ParameterError('need at least 2 pairs, got %d' % len(a))

    differences = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    mean = float(differences.mean())
    deviation = float(differences.std(ddof=1))
    if deviation == 0.0:
        if mean == 0.0:
            return 0.0, False
        return math.copysign(math.inf, mean), True

    n = len(differences)
    t = mean / (deviation / math.sqrt(n))
    return t, abs(t) > critical_value(n - 1)


class ClassSpec(NamedTuple):
    """A hypothesis-class recipe such as ``noisy-clusters:20:50``."""

    kind: str
    params: Dict[str, Any]
    text: str

    def __str__(self) -> str:
        return self.text


def _ints(text: str, what: str) -> Tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise ParameterError('bad %s %r' % (what, text))
    if not values:
        raise ParameterError('missing %s' % what)
    return values


def _int(text: str, what: str) -> int:
    values = _ints(text, what)
    if len(values) != 1:
        raise ParameterError('expected one %s, got %r' % (what, text))
    return values[0]


def parse_class_spec(text: str) -> ClassSpec:
    kind, *args = text.split(':')
    params: Dict[str, Any] = {}

    if kind in (CLASS_CLUSTERS, CLASS_NOISY_CLUSTERS):
        params['sizes'] = (
            _ints(args[0], 'cluster sizes') if args
            else constants.DEFAULT_CLUSTER_SIZES
        )
        if kind == CLASS_NOISY_CLUSTERS:
            params['variants'] = (
                _int(args[1], 'variant count') if len(args) > 1
                else constants.DEFAULT_NOISY_VARIANTS
            )
        max_args = 1 if kind == CLASS_CLUSTERS else 2
    elif kind == CLASS_BALLS:
        params['count'] = (
            _int(args[0], 'ball count') if args
            else constants.DEFAULT_BALL_COUNT
        )
        params['radius'] = (
            _int(args[1], 'radius') if len(args) > 1
            else constants.DEFAULT_BALL_RADIUS
        )
        max_args = 2
    elif kind == CLASS_NOISY_BALLS:
        names = ('cores', 'variants', 'radius')
        defaults = (
            constants.DEFAULT_NOISY_BALL_CORES,
            constants.DEFAULT_NOISY_BALL_VARIANTS,
            constants.DEFAULT_BALL_RADIUS,
        )
        for position, (name, default) in enumerate(zip(names, defaults)):
            params[name] = (
                _int(args[position], name) if len(args) > position else default
            )
        max_args = 3
    elif kind == CLASS_EXPANDED_CLUSTERS:
        params['k'] = (
            _int(args[0], 'cluster count') if args
            else constants.DEFAULT_EXPANDED_CLUSTERS
        )
        max_args = 1
    else:
        raise ParameterError('unknown hypothesis class %r' % kind)

    if len(args) > max_args:
        raise ParameterError('too many parameters in %r' % text)
    return ClassSpec(kind, params, text)


def build_class(graph: nx.Graph, spec: ClassSpec, seed: int) -> HypothesisClass:
    """
    The hypothesis class of a spec. For noisy clusters this is only the
    base clusters; the variants are drawn per trial.
    """
    params = spec.params
    if spec.kind in (CLASS_CLUSTERS, CLASS_NOISY_CLUSTERS):
        return gen_clusters_class(graph, params['sizes'], seed)
    if spec.kind == CLASS_BALLS:
        return gen_balls(graph, params['count'], params['radius'], seed)
    if spec.kind == CLASS_NOISY_BALLS:
        return gen_noisy_balls(
            graph, params['cores'], params['variants'], params['radius'], seed
        )
    return gen_expanded_clusters(graph, params['k'], seed)


class TrialResult(NamedTuple):
    trial: int
    seed: int
    target: int
    oracle_seed: int
    counts: Dict[str, int]


class ExperimentResult(object):
    __slots__ = ('dataset', 'class_spec', 'policies', 'trials')

    def __init__(
        self,
        dataset: str,
        class_spec: ClassSpec,
        policies: Sequence[str],
        trials: Sequence[TrialResult],
    ) -> None:
        self.dataset = dataset
        self.class_spec = class_spec
        self.policies = tuple(policies)
        self.trials = list(trials)

    def counts(self, policy: str) -> List[int]:
        return [trial.counts[policy] for trial in self.trials]

    def mean(self, policy: str) -> float:
        return float(np.mean(self.counts(policy)))

    def std(self, policy: str) -> float:
        counts = self.counts(policy)
        if len(counts) < 2:
            return 0.0
        return float(np.std(counts, ddof=1))

    def columns(self) -> List[str]:
        columns = list(constants.CSV_COLUMNS)
        for policy in self.policies:
            columns.extend(['t_vs_%s' % policy, 'sig_vs_%s' % policy])
        return columns

    def rows(self) -> List[Dict[str, str]]:
        rows = []
        for policy in self.policies:
            row = {
                'dataset': self.dataset,
                'class': str(self.class_spec),
                'policy': policy,
                'trials': str(len(self.trials)),
                'mean': _format_float(self.mean(policy)),
                'std': _format_float(self.std(policy)),
            }
            for other in self.policies:
                t_value, significant = '', ''
                if other != policy and len(self.trials) >= 2:
                    t, sig = paired_t_test(
                        self.counts(policy), self.counts(other)
                    )
                    t_value = _format_float(t)
                    significant = 'yes' if sig else 'no'
                row['t_vs_%s' % other] = t_value
                row['sig_vs_%s' % other] = significant
            rows.append(row)
        return rows

    def write_csv(self, stream: TextIO) -> None:
        writer = csv.DictWriter(
            stream, fieldnames=self.columns(), lineterminator='\n'
        )
        writer.writeheader()
        for row in self.rows():
            writer.writerow(row)


def _format_float(value: float) -> str:
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return '%.4f' % value


class Experiment(object):
    """
    Repeated trials of several policies on one graph and hypothesis class.
    Every trial draws its target (and, for noisy clusters, the target's
    variants) from a seed derived from the experiment seed and the trial
    index; all policies of a trial face the same random consistent oracle
    seed.
    """

    def __init__(
        self,
        graph: nx.Graph,
        class_spec: ClassSpec,
        policies: Sequence[str],
        trials: int,
        seed: int = 0,
        dataset: str = 'graph',
        step_limit: int = constants.DEFAULT_STEP_LIMIT,
        tracer: Optional[opentracing.Tracer] = None,
        metrics_factory: Optional[MetricsFactory] = None,
        logger: Optional[logging.Logger] = None,
    ) -> None:
        if trials < 1:
            raise ParameterError('trials must be positive, got %r' % (trials,))
        if not policies:
            raise ParameterError('no policies given')
        for name in policies:
            if name not in constants.POLICY_NAMES:
                raise ParameterError('unknown policy %r' % (name,))

        self.graph = graph
        self.class_spec = class_spec
        self.policies = tuple(policies)
        self.trials = trials
        self.seed = seed
        self.dataset = dataset
        self.step_limit = step_limit
        self.tracer = tracer or opentracing.global_tracer()
        self.metrics_factory = metrics_factory or MetricsFactory()
        self.metrics = ExperimentMetrics(self.metrics_factory)
        self.logger = logger or default_logger

        self.index = DominationIndex(graph)
        self.base = build_class(graph, class_spec, derive_seed(seed, 'class'))
        self.noisy = class_spec.kind == CLASS_NOISY_CLUSTERS
        self._static: Optional[Instance] = None
        self._static_plan: Optional[Tuple[int, ...]] = None
        if not self.noisy:
            self._static = build_dominating_instance(
                graph, self.base, index=self.index
            )

    def _static_cover_all(self) -> Tuple[int, ...]:
        if self._static_plan is None:
            assert self._static is not None, 'static instance missing'
            self._static_plan = cover_all_plan(self._static)
        return self._static_plan

    def trial_instance(self, trial: int) -> Tuple[Instance, int, int]:
        """(instance, target, trial seed) of one trial"""
        trial_seed = derive_seed(self.seed, 'trial', trial)
        rng = random.Random(trial_seed)
        if not self.noisy:
            assert self._static is not None, 'static instance missing'
            return self._static, rng.randrange(len(self.base)), trial_seed

        candidates = [h for h, group in enumerate(self.base) if len(group) >= 2]
        if not candidates:
            raise ParameterError('no cluster has two or more members')
        target = rng.choice(candidates)
        hc = gen_noisy_variants(
            self.base, target, self.class_spec.params['variants'],
            derive_seed(trial_seed, 'variants'),
        )
        inst = build_dominating_instance(self.graph, hc, index=self.index)
        return inst, target, trial_seed

    def _policy(self, name: str, inst: Instance) -> Policy:
        if name == constants.POLICY_COVER_ALL and inst is self._static:
            return CoverAllPolicy(self._static_cover_all())
        return make_policy(name, inst)

    def run_trial(self, trial: int) -> TrialResult:
        inst, target, trial_seed = self.trial_instance(trial)
        oracle_seed = derive_seed(trial_seed, 'oracle')
        counts = {}
        with self.tracer.start_active_span('trial', tags={
            'trial': trial, 'target': target, 'dataset': self.dataset,
        }):
            for name in self.policies:
                transcript = run_policy(
                    inst,
                    self._policy(name, inst),
                    random_consistent_oracle(inst, target, oracle_seed),
                    step_limit=self.step_limit,
                    tracer=self.tracer,
                    metrics_factory=self.metrics_factory,
                )
                counts[name] = len(transcript)
        self.metrics.trials(1)
        self.logger.debug('trial %d (target h%d): %s', trial, target, counts)
        return TrialResult(trial, trial_seed, target, oracle_seed, counts)

    async def run(self, executor: Optional[Executor] = None) -> ExperimentResult:
        loop = asyncio.get_event_loop()
        if self._static is not None and \
                constants.POLICY_COVER_ALL in self.policies:
            await loop.run_in_executor(executor, self._static_cover_all)

        results = await asyncio.gather(*(
            loop.run_in_executor(executor, self.run_trial, trial)
            for trial in range(self.trials)
        ))
        result = ExperimentResult(
            self.dataset, self.class_spec, self.policies, results
        )
        for policy in self.policies:
            self.logger.info(
                '%s on %s/%s: mean %.2f queries over %d trials',
                policy, self.dataset, self.class_spec, result.mean(policy),
                self.trials,
            )
        return result


async def run_experiment(
    graph: nx.Graph,
    class_spec: str,
    policies: Sequence[str],
    trials: int,
    seed: int = 0,
    executor: Optional[Executor] = None,
    **kwargs: Any
) -> ExperimentResult:
    experiment = Experiment(
        graph, parse_class_spec(class_spec), policies, trials, seed, **kwargs
    )
    return await experiment.run(executor)
