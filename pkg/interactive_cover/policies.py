import logging
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple

from . import constants
from .errors import (
    InconsistentOracleError, InfeasibleInstanceError, MalformedPairError,
    ParameterError, SizeError,
)
from .instance import EMPTY, Instance, PairSet
from .objectives import CompositeState
from .runner import Policy
from .transcript import Transcript
from .utils import iter_bits, popcount, ratio_greater


default_logger = logging.getLogger(__name__)


class GreedyStep(NamedTuple):
    query: int
    scaled_gain: int
    value_before: int
    cost: Fraction


def worst_case_gain(
    inst: Instance,
    s: PairSet,
    q: int,
    state: Optional[CompositeState] = None,
) -> Tuple[int, Fraction]:
    """
    Smallest scaled composite gain of asking q over every response some
    hypothesis of the version space allows, with the cost of q.
    """
    if not 0 <= q < inst.n_queries:
        raise MalformedPairError('unknown query id %r' % (q,))
    if state is None:
        state = CompositeState(inst, s)
    cost = inst.costs[q]
    if not state.mask:
        return 0, cost
    responses = inst.table.responses_for(q, state.mask)
    return min(state.gain((q, r)) for r in responses), cost


class GreedyPolicy(Policy):
    """
    Worst case greedy on the scaled composite objective: ask the question
    with the best worst-case gain per unit cost until every hypothesis left
    in the version space is covered. ``history`` records every choice.
    """

    name = constants.POLICY_GREEDY

    def __init__(self, logger: Optional[logging.Logger] = None) -> None:
        self.logger = logger or default_logger
        self.history: List[GreedyStep] = []
        self._state: Optional[CompositeState] = None

    def _sync(self, inst: Instance, pairs: PairSet) -> CompositeState:
        state = self._state
        if state is None or state.inst is not inst:
            state = CompositeState(inst, pairs)
        elif state.pairs != pairs:
            added = pairs - state.pairs
            if len(added) == 1 and state.pairs <= pairs:
                state = state.extend(next(iter(added)))
            else:
                state = CompositeState(inst, pairs)
        self._state = state
        return state

    def next(
        self, inst: Instance, pairs: PairSet, transcript: Transcript
    ) -> Optional[int]:
        state = self._sync(inst, pairs)
        if state.satisfied:
            return None

        best: Optional[Tuple[int, int, Fraction]] = None
        for q in inst.queries:
            scaled_gain, cost = worst_case_gain(inst, pairs, q, state)
            if scaled_gain <= 0:
                continue
            if best is None or ratio_greater(scaled_gain, cost, best[1], best[2]):
                best = (q, scaled_gain, cost)

        if best is None:
            raise InfeasibleInstanceError(
                'no question has positive worst-case gain at value %d of %d'
                % (state.value, state.threshold)
            )

        query, scaled_gain, cost = best
        self.history.append(GreedyStep(query, scaled_gain, state.value, cost))
        self.logger.debug(
            'greedy picks q%d: worst-case gain %d, cost %s',
            query, scaled_gain, cost,
        )
        return query


class NaiveGreedyPolicy(Policy):
    """
    Greedy on the raw per-hypothesis objectives: among questions not asked
    yet, maximize the smallest F_h gain over the version space and the
    responses h allows, per unit cost.
    """

    name = constants.POLICY_NAIVE_GREEDY

    def next(
        self, inst: Instance, pairs: PairSet, transcript: Transcript
    ) -> Optional[int]:
        mask = inst.version_mask(pairs)
        alive = list(iter_bits(mask))
        objectives = inst.objectives
        base = {h: objectives[h](pairs) for h in alive}
        if all(value >= inst.alpha for value in base.values()):
            return None

        asked = {q for q, _ in pairs}
        best: Optional[Tuple[int, int, Fraction]] = None
        for q in inst.queries:
            if q in asked:
                continue
            score = self._worst_gain(inst, pairs, q, alive, base)
            cost = inst.costs[q]
            if best is None or ratio_greater(score, cost, best[1], best[2]):
                best = (q, score, cost)

        if best is None:
            raise InfeasibleInstanceError(
                'every question was asked but some hypothesis is uncovered'
            )
        return best[0]

    @staticmethod
    def _worst_gain(
        inst: Instance,
        pairs: PairSet,
        q: int,
        alive: Sequence[int],
        base: Dict[int, int],
    ) -> int:
        objectives = inst.objectives
        extended: Dict[int, PairSet] = {}
        worst: Optional[int] = None
        for h in alive:
            for r in inst.valid_responses(q, h):
                s = extended.get(r)
                if s is None:
                    s = extended[r] = pairs | {(q, r)}
                value = objectives[h](s) - base[h]
                if worst is None or value < worst:
                    worst = value
        return worst or 0


class LearnThenCoverPolicy(Policy):
    """
    First identify the target by greedy worst-case elimination, then cover
    the surviving hypotheses with classical greedy set cover. Learning
    stops early when no question can separate the survivors.
    """

    name = constants.POLICY_LEARN_THEN_COVER

    def __init__(self, logger: Optional[logging.Logger] = None) -> None:
        self.logger = logger or default_logger
        self.learning = True
        self.survivors = 0
        self.learning_queries = 0

    def next(
        self, inst: Instance, pairs: PairSet, transcript: Transcript
    ) -> Optional[int]:
        mask = inst.version_mask(pairs)
        if not mask:
            raise InconsistentOracleError(
                'responses %s eliminated every hypothesis' % sorted(pairs)
            )

        if self.learning:
            query = self._learn(inst, mask)
            if query is not None:
                self.learning_queries += 1
                return query
            self.learning = False
            self.survivors = mask
            if popcount(mask) > 1:
                self.logger.warning(
                    'learning ended with %d indistinguishable hypotheses',
                    popcount(mask),
                )

        return self._cover(inst, pairs)

    def _learn(self, inst: Instance, mask: int) -> Optional[int]:
        size = popcount(mask)
        if size <= 1:
            return None
        table = inst.table
        best: Optional[Tuple[int, int, Fraction]] = None
        for q in inst.queries:
            largest = max(
                popcount(mask & table.consistent_mask((q, r)))
                for r in table.responses_for(q, mask)
            )
            eliminated = size - largest
            if eliminated <= 0:
                continue
            cost = inst.costs[q]
            if best is None or ratio_greater(eliminated, cost, best[1], best[2]):
                best = (q, eliminated, cost)
        return None if best is None else best[0]

    def _cover(self, inst: Instance, pairs: PairSet) -> Optional[int]:
        alpha = inst.alpha
        objectives = inst.objectives
        survivors = list(iter_bits(self.survivors))
        current = {h: min(alpha, objectives[h](pairs)) for h in survivors}
        pending = [h for h in survivors if current[h] < alpha]
        if not pending:
            return None

        best: Optional[Tuple[int, int, Fraction]] = None
        for q in inst.queries:
            worst: Optional[int] = None
            for r in inst.table.responses_for(q, self.survivors):
                if (q, r) in pairs:
                    worst = 0
                    break
                s = pairs | {(q, r)}
                value = sum(
                    min(alpha, objectives[h](s)) - current[h] for h in pending
                )
                if worst is None or value < worst:
                    worst = value
            if worst is None or worst <= 0:
                continue
            cost = inst.costs[q]
            if best is None or ratio_greater(worst, cost, best[1], best[2]):
                best = (q, worst, cost)

        if best is None:
            raise InfeasibleInstanceError(
                'no question makes covering progress for %d hypotheses'
                % len(pending)
            )
        return best[0]


def cover_all_plan(
    inst: Instance,
    max_assignments: int = constants.DEFAULT_MAX_ASSIGNMENTS,
) -> Tuple[int, ...]:
    """
    The fixed question sequence of the cover-all strategy. A hypothesis h
    counts as covered once min(alpha, F_h) reaches alpha under every
    response assignment consistent with h on the chosen questions.
    """
    alpha = inst.alpha
    objectives = inst.objectives
    hypotheses = list(inst.hypotheses)
    independent = {h: objectives[h].response_independent for h in hypotheses}

    # Response-independent objectives are evaluated on one shared
    # assignment answering 0 everywhere
    answered: PairSet = EMPTY
    assignments: Dict[int, Set[PairSet]] = {h: {EMPTY} for h in hypotheses}
    current = {h: min(alpha, objectives[h](EMPTY)) for h in hypotheses}
    plan: List[int] = []

    while True:
        pending = [h for h in hypotheses if current[h] < alpha]
        if not pending:
            return tuple(plan)

        best: Optional[Tuple[int, int, Fraction, Dict[int, int]]] = None
        for q in inst.queries:
            if q in plan:
                continue
            shared = answered | {(q, 0)}
            values = {}
            for h in pending:
                if independent[h]:
                    values[h] = min(alpha, objectives[h](shared))
                else:
                    values[h] = min(
                        min(alpha, objectives[h](a | {(q, r)}))
                        for a in assignments[h]
                        for r in inst.valid_responses(q, h)
                    )
            gain = sum(values[h] - current[h] for h in pending)
            if gain <= 0:
                continue
            cost = inst.costs[q]
            if best is None or ratio_greater(gain, cost, best[1], best[2]):
                best = (q, gain, cost, values)

        if best is None:
            raise InfeasibleInstanceError(
                'cover-all can not guarantee coverage of %d hypotheses'
                % len(pending)
            )

        query, _, _, values = best
        plan.append(query)
        answered = answered | {(query, 0)}
        for h in pending:
            current[h] = values[h]
            if independent[h]:
                continue
            extended = {
                a | {(query, r)}
                for a in assignments[h]
                for r in inst.valid_responses(query, h)
            }
            if len(extended) > max_assignments:
                raise SizeError(
                    'more than %d response assignments for h%d'
                    % (max_assignments, h)
                )
            assignments[h] = extended


class CoverAllPolicy(Policy):
    """Asks a precomputed question sequence and ignores every response."""

    name = constants.POLICY_COVER_ALL

    def __init__(self, plan: Optional[Sequence[int]] = None) -> None:
        self.plan: Optional[Tuple[int, ...]] = (
            tuple(plan) if plan is not None else None
        )

    def next(
        self, inst: Instance, pairs: PairSet, transcript: Transcript
    ) -> Optional[int]:
        if self.plan is None:
            self.plan = cover_all_plan(inst)
        index = len(transcript)
        if index >= len(self.plan):
            return None
        return self.plan[index]


def greedy_policy(inst: Optional[Instance] = None) -> GreedyPolicy:
    return GreedyPolicy()


def naive_greedy_policy(inst: Optional[Instance] = None) -> NaiveGreedyPolicy:
    return NaiveGreedyPolicy()


def learn_then_cover_policy(
    inst: Optional[Instance] = None
) -> LearnThenCoverPolicy:
    return LearnThenCoverPolicy()


def cover_all_policy(inst: Optional[Instance] = None) -> CoverAllPolicy:
    if inst is None:
        return CoverAllPolicy()
    return CoverAllPolicy(cover_all_plan(inst))


POLICIES = {
    constants.POLICY_GREEDY: greedy_policy,
    constants.POLICY_NAIVE_GREEDY: naive_greedy_policy,
    constants.POLICY_LEARN_THEN_COVER: learn_then_cover_policy,
    constants.POLICY_COVER_ALL: cover_all_policy,
}


def make_policy(name: str, inst: Optional[Instance] = None) -> Policy:
    try:
        factory = POLICIES[name]
    except KeyError:
        raise ParameterError(
            'unknown policy %r, expected one of %s'
            % (name, ', '.join(constants.POLICY_NAMES))
        )
    return factory(inst)
