import itertools
import logging
import math
from fractions import Fraction
from typing import (
    Any, Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence,
    Tuple, Union,
)

import opentracing

from .config import BruteForceLimits
from .errors import InfeasibleInstanceError, SizeError
from .instance import EMPTY, Instance, Pair, PairSet
from .metrics import MetricsFactory, VerifyMetrics
from .objectives import CompositeState, Objective, f_bar_satisfied
from .oracles import AdversarialOracle
from .policies import GreedyPolicy, GreedyStep
from .runner import run_policy
from .utils import fraction_to_pair, iter_bits, popcount, ratio_greater


default_logger = logging.getLogger(__name__)

Cost = Union[Fraction, float]

INFINITY = math.inf


class Counterexample(NamedTuple):
    """
    A violated property. ``kind`` is ``normalized``, ``monotone`` or
    ``submodular``; for submodularity F(a + v) - F(a) < F(b + v) - F(b).
    """

    kind: str
    a: PairSet
    b: PairSet
    v: Optional[Pair]

    def __str__(self) -> str:
        if self.kind == 'normalized':
            return 'not normalized: F(empty) != 0'
        if self.kind == 'monotone':
            return 'not monotone: adding %s to %s decreases F' % (
                self.v, sorted(self.a)
            )
        return 'not submodular: %s gains more on %s than on %s' % (
            self.v, sorted(self.b), sorted(self.a)
        )


def check_submodular_monotone(
    f: Objective,
    ground: Iterable[Pair],
    limits: Optional[BruteForceLimits] = None,
) -> Optional[Counterexample]:
    """
    Check F(empty) = 0, monotonicity and diminishing returns of f over every
    subset of ``ground``. Returns None on success, otherwise the witness with
    the smallest base set. Submodularity is checked through the equivalent
    local condition F(S + u) + F(S + v) >= F(S + u + v) + F(S).
    """
    limits = limits or BruteForceLimits()
    elements = sorted(set(ground))
    size = len(elements)
    if size > limits.max_ground:
        raise SizeError(
            'ground set of %d pairs exceeds the limit of %d'
            % (size, limits.max_ground)
        )

    def subset(mask: int) -> PairSet:
        return frozenset(elements[i] for i in iter_bits(mask))

    values = [f(subset(mask)) for mask in range(1 << size)]
    if values[0] != 0:
        return Counterexample('normalized', EMPTY, EMPTY, None)

    masks = sorted(range(1 << size), key=lambda m: (popcount(m), m))
    for mask in masks:
        base = values[mask]
        for u in range(size):
            if (mask >> u) & 1:
                continue
            if values[mask | 1 << u] < base:
                return Counterexample(
                    'monotone', subset(mask), subset(mask), elements[u]
                )

    for mask in masks:
        base = values[mask]
        for u in range(size):
            if (mask >> u) & 1:
                continue
            with_u = values[mask | 1 << u]
            for v in range(u + 1, size):
                if (mask >> v) & 1:
                    continue
                with_v = values[mask | 1 << v]
                with_both = values[mask | 1 << u | 1 << v]
                if with_u + with_v < with_both + base:
                    return Counterexample(
                        'submodular', subset(mask), subset(mask | 1 << u),
                        elements[v],
                    )
    return None


def _min_cost_subset(
    inst: Instance,
    queries: Sequence[int],
    feasible: Callable[[Tuple[int, ...]], bool],
) -> Cost:
    """
    Cheapest subset of ``queries`` accepted by ``feasible``, which must be
    monotone under inclusion. Depth-first include/exclude search with a
    cost bound.
    """
    costs = inst.costs
    queries = tuple(queries)
    best: List[Cost] = [INFINITY]

    def search(index: int, chosen: Tuple[int, ...], cost: Fraction) -> None:
        if cost >= best[0]:
            return
        if feasible(chosen):
            best[0] = cost
            return
        if index == len(queries):
            return
        if not feasible(chosen + queries[index:]):
            return
        q = queries[index]
        search(index + 1, chosen + (q,), cost + costs[q])
        search(index + 1, chosen, cost)

    search(0, (), Fraction(0))
    return best[0]


def brute_gcc(
    inst: Instance, limits: Optional[BruteForceLimits] = None
) -> Cost:
    """
    General cover cost: over every answer table T, the cheapest question set
    whose answers under T satisfy the composite goal, maximized over T.
    Tables range over responses some hypothesis allows. Any table no
    question set satisfies makes the result infinite.
    """
    limits = limits or BruteForceLimits()
    if inst.n_queries > limits.gcc_max_queries \
            or inst.n_responses > limits.gcc_max_responses:
        raise SizeError(
            'GCC enumeration needs |Q| <= %d and |R| <= %d, got %d and %d'
            % (limits.gcc_max_queries, limits.gcc_max_responses,
               inst.n_queries, inst.n_responses)
        )

    queries = list(inst.queries)
    ranges = [inst.table.responses_for(q) for q in queries]
    result: Cost = Fraction(0)
    for answers in itertools.product(*ranges):
        cache: Dict[Tuple[int, ...], bool] = {}

        def feasible(chosen: Tuple[int, ...]) -> bool:
            key = tuple(sorted(chosen))
            if key not in cache:
                cache[key] = f_bar_satisfied(
                    inst, frozenset((q, answers[q]) for q in key)
                )
            return cache[key]

        cost = _min_cost_subset(inst, queries, feasible)
        if cost == INFINITY:
            default_logger.debug('answer table %s can not be satisfied', answers)
            return INFINITY
        result = max(result, cost)
    return result


class _AdaptiveSearch(object):
    """
    Minimax over (PairSet) states: the questioner minimizes and the
    adversary maximizes total cost, answering only with responses some
    hypothesis of the version space allows. Fail-high results are stored
    as lower bounds, exact results as values.
    """

    def __init__(self, inst: Instance, max_states: int) -> None:
        self.inst = inst
        self.max_states = max_states
        self.exact: Dict[PairSet, Cost] = {}
        self.lower: Dict[PairSet, Cost] = {}
        self.states = 0

    def _ordered(self, state: CompositeState) -> List[int]:
        inst = self.inst
        table = inst.table
        scored = []
        for q in inst.queries:
            responses = table.responses_for(q, state.mask)
            if any((q, r) in state.pairs for r in responses):
                continue
            worst = min(state.gain((q, r)) for r in responses)
            scored.append((q, worst, inst.costs[q]))

        def order(item: Tuple[int, int, Fraction]) -> Tuple[Fraction, int]:
            q, worst, cost = item
            return (-Fraction(worst) / cost, q)

        return [q for q, _, _ in sorted(scored, key=order)]

    def solve(self, pairs: PairSet, bound: Cost) -> Cost:
        """Exact value when it is below ``bound``, otherwise some value >= bound"""
        value = self.exact.get(pairs)
        if value is not None:
            return value
        lower = self.lower.get(pairs, Fraction(0))
        if lower >= bound:
            return lower

        inst = self.inst
        state = CompositeState(inst, pairs)
        if state.satisfied:
            self.exact[pairs] = Fraction(0)
            return Fraction(0)

        self.states += 1
        if self.states > self.max_states:
            raise SizeError(
                'minimax search exceeded %d states' % self.max_states
            )

        best: Cost = INFINITY
        for q in self._ordered(state):
            cost = inst.costs[q]
            limit = min(best, bound)
            if cost >= limit:
                continue
            worst: Cost = cost
            for r in inst.table.responses_for(q, state.mask):
                child = self.solve(pairs | {(q, r)}, limit - cost)
                worst = max(worst, cost + child)
                if worst >= limit:
                    break
            if worst < best:
                best = worst

        if best < bound:
            self.exact[pairs] = best
        else:
            self.lower[pairs] = max(lower, bound)
        return best


def brute_optimal_adaptive_cost(
    inst: Instance,
    limits: Optional[BruteForceLimits] = None,
    metrics_factory: Optional[MetricsFactory] = None,
) -> Cost:
    """Worst-case cost of the best adaptive questioning strategy."""
    limits = limits or BruteForceLimits()
    if inst.n_queries > limits.adaptive_max_queries:
        raise SizeError(
            'minimax search needs |Q| <= %d, got %d'
            % (limits.adaptive_max_queries, inst.n_queries)
        )
    metrics = VerifyMetrics(metrics_factory or MetricsFactory())
    search = _AdaptiveSearch(inst, limits.max_states)
    value = search.solve(EMPTY, INFINITY)
    metrics.brute_states(search.states)
    default_logger.debug('minimax search explored %d states', search.states)
    return value


def _assignments(
    inst: Instance, h: int, queries: Sequence[int], max_assignments: int
) -> List[PairSet]:
    choices = [
        [(q, r) for r in sorted(inst.valid_responses(q, h))] for q in queries
    ]
    total = 1
    for options in choices:
        total *= len(options)
    if total > max_assignments:
        raise SizeError(
            '%d response assignments for h%d exceed the limit of %d'
            % (total, h, max_assignments)
        )
    return [frozenset(combination) for combination in itertools.product(*choices)]


def brute_optimal_nonadaptive_cost(
    inst: Instance, limits: Optional[BruteForceLimits] = None
) -> Cost:
    """
    Cheapest question set that satisfies the composite goal under every
    response assignment consistent with any hypothesis.
    """
    limits = limits or BruteForceLimits()
    if inst.n_queries > limits.nonadaptive_max_queries:
        raise SizeError(
            'non-adaptive search needs |Q| <= %d, got %d'
            % (limits.nonadaptive_max_queries, inst.n_queries)
        )

    satisfied: Dict[PairSet, bool] = {}
    cache: Dict[Tuple[int, ...], bool] = {}

    def covered(pairs: PairSet) -> bool:
        if pairs not in satisfied:
            satisfied[pairs] = f_bar_satisfied(inst, pairs)
        return satisfied[pairs]

    def feasible(chosen: Tuple[int, ...]) -> bool:
        key = tuple(sorted(chosen))
        if key not in cache:
            cache[key] = all(
                covered(pairs)
                for h in inst.hypotheses
                for pairs in _assignments(
                    inst, h, key, limits.max_assignments
                )
            )
        return cache[key]

    return _min_cost_subset(inst, list(inst.queries), feasible)


def worst_case_policy_cost(
    inst: Instance,
    make_policy: Callable[[], Any],
    tracer: Optional[opentracing.Tracer] = None,
) -> Tuple[Cost, Dict[int, Any]]:
    """
    Largest total cost of a policy against the adversarial oracle over all
    targets. Returns the cost and the policy object used for every target.
    An infeasible run makes the cost infinite.
    """
    worst: Cost = Fraction(0)
    used = {}
    for target in inst.hypotheses:
        policy = make_policy()
        used[target] = policy
        try:
            transcript = run_policy(
                inst, policy, AdversarialOracle(target), tracer=tracer
            )
        except InfeasibleInstanceError:
            return INFINITY, used
        worst = max(worst, transcript.total_cost)
    return worst, used


def _cost_to_json(value: Cost) -> Any:
    if value == INFINITY:
        return 'inf'
    return fraction_to_pair(Fraction(value))


class BoundReport(object):
    """
    Greedy's worst-case cost against the adversary next to the exact
    general cover cost, the optimal adaptive and non-adaptive costs, and
    the outcome of every audited inequality.
    """

    __slots__ = (
        'greedy_cost', 'gcc', 'optimal_adaptive_cost',
        'optimal_nonadaptive_cost', 'bound_value', 'gcc_le_adaptive',
        'greedy_within_bound', 'adaptive_le_nonadaptive', 'progress_ok',
        'violations',
    )

    def __init__(
        self,
        greedy_cost: Cost,
        gcc: Cost,
        optimal_adaptive_cost: Cost,
        optimal_nonadaptive_cost: Cost,
        bound_value: float,
        gcc_le_adaptive: bool,
        greedy_within_bound: bool,
        adaptive_le_nonadaptive: bool,
        progress_ok: bool,
        violations: Optional[List[str]] = None,
    ) -> None:
        self.greedy_cost = greedy_cost
        self.gcc = gcc
        self.optimal_adaptive_cost = optimal_adaptive_cost
        self.optimal_nonadaptive_cost = optimal_nonadaptive_cost
        self.bound_value = bound_value
        self.gcc_le_adaptive = gcc_le_adaptive
        self.greedy_within_bound = greedy_within_bound
        self.adaptive_le_nonadaptive = adaptive_le_nonadaptive
        self.progress_ok = progress_ok
        self.violations = violations or []

    @property
    def passed(self) -> bool:
        return (
            self.gcc_le_adaptive and self.greedy_within_bound
            and self.adaptive_le_nonadaptive and self.progress_ok
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'greedy_cost': _cost_to_json(self.greedy_cost),
            'gcc': _cost_to_json(self.gcc),
            'optimal_adaptive_cost': _cost_to_json(self.optimal_adaptive_cost),
            'optimal_nonadaptive_cost': _cost_to_json(
                self.optimal_nonadaptive_cost
            ),
            'bound_value': (
                'inf' if self.bound_value == INFINITY else self.bound_value
            ),
            'gcc_le_adaptive': self.gcc_le_adaptive,
            'greedy_within_bound': self.greedy_within_bound,
            'adaptive_le_nonadaptive': self.adaptive_le_nonadaptive,
            'progress_ok': self.progress_ok,
            'passed': self.passed,
            'violations': list(self.violations),
        }

    def __repr__(self) -> str:
        return 'BoundReport(greedy=%s, gcc=%s, adaptive=%s, nonadaptive=%s)' % (
            self.greedy_cost, self.gcc, self.optimal_adaptive_cost,
            self.optimal_nonadaptive_cost,
        )


def progress_violations(
    inst: Instance, history: Iterable[GreedyStep], gcc: Cost
) -> List[str]:
    """
    Greedy steps whose worst-case gain falls short of
    cost * (alpha |H| - value) / GCC.
    """
    if gcc == INFINITY:
        return []
    gcc = Fraction(gcc)
    violations = []
    for step in history:
        missing = inst.threshold - step.value_before
        if ratio_greater(missing, gcc, step.scaled_gain, step.cost):
            violations.append(
                'q%d gains %d at cost %s, needs %s'
                % (step.query, step.scaled_gain, step.cost,
                   step.cost * missing / gcc)
            )
    return violations


def greedy_cost_bound(inst: Instance, gcc: Cost) -> float:
    """gcc * (1 + ln(alpha |H|))"""
    if gcc == INFINITY:
        return INFINITY
    return float(gcc) * (1 + math.log(inst.threshold))


def audit_bounds(
    inst: Instance,
    limits: Optional[BruteForceLimits] = None,
    tracer: Optional[opentracing.Tracer] = None,
    metrics_factory: Optional[MetricsFactory] = None,
) -> BoundReport:
    limits = limits or BruteForceLimits()
    tracer = tracer or opentracing.global_tracer()

    with tracer.start_active_span('audit_bounds', tags={
        'hypotheses': inst.n_hypotheses, 'queries': inst.n_queries,
    }):
        greedy_cost, policies = worst_case_policy_cost(
            inst, GreedyPolicy, tracer=tracer
        )
        gcc = brute_gcc(inst, limits)
        adaptive = brute_optimal_adaptive_cost(inst, limits, metrics_factory)
        nonadaptive = brute_optimal_nonadaptive_cost(inst, limits)

    bound_value = greedy_cost_bound(inst, gcc)
    progress = [
        'target h%d: %s' % (target, violation)
        for target, policy in sorted(policies.items())
        for violation in progress_violations(inst, policy.history, gcc)
    ]
    violations = list(progress)

    gcc_le_adaptive = gcc <= adaptive
    if bound_value == INFINITY:
        greedy_within_bound = True
    else:
        greedy_within_bound = float(greedy_cost) <= bound_value + 1e-9
    adaptive_le_nonadaptive = adaptive <= nonadaptive

    if not gcc_le_adaptive:
        violations.append('GCC %s exceeds optimal adaptive cost %s' % (
            gcc, adaptive
        ))
    if not greedy_within_bound:
        violations.append('greedy cost %s exceeds bound %.6f' % (
            greedy_cost, bound_value
        ))
    if not adaptive_le_nonadaptive:
        violations.append(
            'optimal adaptive cost %s exceeds non-adaptive cost %s'
            % (adaptive, nonadaptive)
        )

    report = BoundReport(
        greedy_cost=greedy_cost,
        gcc=gcc,
        optimal_adaptive_cost=adaptive,
        optimal_nonadaptive_cost=nonadaptive,
        bound_value=bound_value,
        gcc_le_adaptive=gcc_le_adaptive,
        greedy_within_bound=greedy_within_bound,
        adaptive_le_nonadaptive=adaptive_le_nonadaptive,
        progress_ok=not progress,
        violations=violations,
    )
    default_logger.info('Bound audit: %r', report)
    return report
