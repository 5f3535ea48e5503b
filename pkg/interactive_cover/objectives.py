import logging
from abc import ABC, abstractmethod
from typing import (
    TYPE_CHECKING, Dict, Hashable, Iterable, Mapping, NamedTuple,
    Optional, Sequence, Union,
)

from .errors import ParameterError
from .instance import EMPTY, Pair, PairSet, ResponseTable
from .utils import iter_bits, popcount

if TYPE_CHECKING:  # pragma: no cover
    from .instance import Instance


default_logger = logging.getLogger(__name__)

Weights = Mapping[Pair, int]


def _check_weight(value: object, what: str = 'weight') -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParameterError('%s must be an integer, got %r' % (what, value))
    if value < 0:
        raise ParameterError('%s must be non-negative, got %r' % (what, value))
    return value


def _check_weights(weights: Weights) -> Dict[Pair, int]:
    return {
        (int(q), int(r)): _check_weight(w) for (q, r), w in weights.items()
    }


class Objective(ABC):
    """
    An integer-valued monotone submodular set function over question-response
    pairs. ``offset`` is the value on the empty PairSet: 0 for normalized
    objectives, a documented constant for the shifted constructions.
    """

    offset = 0

    # Value depends only on which questions were asked
    response_independent = False

    @abstractmethod
    def __call__(self, s: PairSet) -> int:
        pass

    def gain(self, s: PairSet, pair: Pair) -> int:
        if pair in s:
            return 0
        return self(s | {pair}) - self(s)

    def __str__(self) -> str:
        return self.__class__.__name__


def gain(f: Objective, s: PairSet, pair: Pair) -> int:
    return f.gain(s, pair)


class ModularObjective(Objective):
    def __init__(self, weights: Weights) -> None:
        self.weights = _check_weights(weights)

    def __call__(self, s: PairSet) -> int:
        weights = self.weights
        return sum(weights.get(pair, 0) for pair in s)

    def gain(self, s: PairSet, pair: Pair) -> int:
        if pair in s:
            return 0
        return self.weights.get(pair, 0)

    def __str__(self) -> str:
        return 'ModularObjective(%d weights)' % len(self.weights)


class MaxCoverageObjective(Objective):
    """max of pair weights over s, 0 on the empty set"""

    def __init__(self, weights: Weights) -> None:
        self.weights = _check_weights(weights)

    def __call__(self, s: PairSet) -> int:
        weights = self.weights
        return max((weights.get(pair, 0) for pair in s), default=0)

    def __str__(self) -> str:
        return 'MaxCoverageObjective(%d weights)' % len(self.weights)


class CoverageObjective(Objective):
    """
    Number of items covered by the sets attached to the pairs of s. When
    ``items`` is given only those items count.
    """

    def __init__(
        self,
        cover: Mapping[Pair, Iterable[Hashable]],
        items: Optional[Iterable[Hashable]] = None,
    ) -> None:
        self.cover = {
            (int(q), int(r)): frozenset(covered)
            for (q, r), covered in cover.items()
        }
        universe = set()
        for covered in self.cover.values():
            universe.update(covered)
        self.items = frozenset(universe if items is None else items)

        index = {item: bit for bit, item in enumerate(sorted(
            universe | self.items, key=repr
        ))}
        self._masks = {
            pair: sum(1 << index[item] for item in covered)
            for pair, covered in self.cover.items()
        }
        self._items_mask = sum(1 << index[item] for item in self.items)

    def __call__(self, s: PairSet) -> int:
        masks = self._masks
        covered = 0
        for pair in s:
            covered |= masks.get(pair, 0)
        return popcount(covered & self._items_mask)

    def __str__(self) -> str:
        return 'CoverageObjective(%d sets, %d items)' % (
            len(self.cover), len(self.items)
        )


def set_cover_objective(
    sets: Sequence[Iterable[Hashable]],
    items: Optional[Iterable[Hashable]] = None,
    response: int = 0,
) -> CoverageObjective:
    """Query i covers sets[i] when answered with ``response``"""
    return CoverageObjective(
        {(q, response): covered for q, covered in enumerate(sets)}, items
    )


class TruncatedObjective(Objective):
    def __init__(self, objective: Objective, cap: int) -> None:
        _check_weight(cap, 'cap')
        if cap < 1:
            raise ParameterError('cap must be positive, got %r' % (cap,))
        self.objective = objective
        self.cap = cap
        self.offset = min(objective.offset, cap)
        self.response_independent = objective.response_independent

    def __call__(self, s: PairSet) -> int:
        return min(self.objective(s), self.cap)

    def __str__(self) -> str:
        return 'min(%s, %d)' % (self.objective, self.cap)


class SumObjective(Objective):
    def __init__(self, objectives: Sequence[Objective]) -> None:
        self.objectives = tuple(objectives)
        self.offset = sum(f.offset for f in self.objectives)
        self.response_independent = all(
            f.response_independent for f in self.objectives
        )

    def __call__(self, s: PairSet) -> int:
        return sum(f(s) for f in self.objectives)

    def __str__(self) -> str:
        return ' + '.join(str(f) for f in self.objectives) or '0'


def truncate(f: Objective, cap: int) -> TruncatedObjective:
    return TruncatedObjective(f, cap)


def sum_objective(fs: Sequence[Objective]) -> SumObjective:
    return SumObjective(fs)


def max_coverage_objective(weights: Weights) -> MaxCoverageObjective:
    return MaxCoverageObjective(weights)


def modular_objective(weights: Weights) -> ModularObjective:
    return ModularObjective(weights)


class ElimCountObjective(Objective):
    """Number of hypotheses eliminated by s: |H| - |V(s)|"""

    def __init__(self, table: ResponseTable) -> None:
        self.table = table

    def __call__(self, s: PairSet) -> int:
        table = self.table
        return table.n_hypotheses - popcount(table.version_mask(s))

    def __str__(self) -> str:
        return 'ElimCountObjective(|H|=%d)' % self.table.n_hypotheses


def _table_of(source: Union['Instance', ResponseTable]) -> ResponseTable:
    return getattr(source, 'table', source)


def elim_count_objective(
    source: Union['Instance', ResponseTable]
) -> ElimCountObjective:
    return ElimCountObjective(_table_of(source))


class ApproxLearningParams(object):
    """
    Data points ``0..n_points-1``, the label every hypothesis predicts for
    each point, and the number of tolerated mistakes kappa.
    """

    __slots__ = ('n_points', 'predictions', 'kappa')

    def __init__(
        self,
        n_points: int,
        predictions: Sequence[Sequence[Hashable]],
        kappa: int,
    ) -> None:
        self.n_points = n_points
        self.predictions = tuple(tuple(row) for row in predictions)
        self.kappa = kappa

    def __repr__(self) -> str:
        return 'ApproxLearningParams(n_points=%d, kappa=%d)' % (
            self.n_points, self.kappa
        )


class ApproxLearningObjective(Objective):
    """
    Rewards eliminating hypotheses that make more than kappa mistakes with
    respect to ``target``. Every hypothesis h' contributes ``|X| - kappa``
    once eliminated, otherwise ``min(|X| - kappa, agreements(h', target))``.
    The value on the empty set is the sum of the capped agreements.
    """

    def __init__(
        self,
        table: ResponseTable,
        params: ApproxLearningParams,
        target: int,
    ) -> None:
        n_points = params.n_points
        if not 0 <= params.kappa <= n_points:
            raise ParameterError(
                'kappa must be between 0 and |X|=%d, got %r'
                % (n_points, params.kappa)
            )
        if len(params.predictions) != table.n_hypotheses:
            raise ParameterError(
                'expected predictions for %d hypotheses, got %d'
                % (table.n_hypotheses, len(params.predictions))
            )
        for h, row in enumerate(params.predictions):
            if len(row) != n_points:
                raise ParameterError(
                    'predictions of h%d cover %d points, expected %d'
                    % (h, len(row), n_points)
                )
        if not 0 <= target < table.n_hypotheses:
            raise ParameterError('unknown target hypothesis %r' % (target,))

        self.table = table
        self.params = params
        self.target = target
        self.cap = n_points - params.kappa

        truth = params.predictions[target]
        self.agreements = tuple(
            min(self.cap, sum(1 for x, y in zip(row, truth) if x == y))
            for row in params.predictions
        )
        self.offset = sum(self.agreements)

    def __call__(self, s: PairSet) -> int:
        table = self.table
        mask = table.version_mask(s)
        eliminated = table.n_hypotheses - popcount(mask)
        return self.cap * eliminated + sum(
            self.agreements[h] for h in iter_bits(mask)
        )

    def __str__(self) -> str:
        return 'ApproxLearningObjective(target=h%d, kappa=%d)' % (
            self.target, self.params.kappa
        )


def approx_learning_objective(
    source: Union['Instance', ResponseTable],
    params: ApproxLearningParams,
    target: int,
) -> ApproxLearningObjective:
    return ApproxLearningObjective(_table_of(source), params, target)


class ShiftedObjective(Objective):
    """f(s) - f.offset, the normalized form of a shifted objective"""

    def __init__(self, objective: Objective) -> None:
        self.objective = objective
        self.response_independent = objective.response_independent

    def __call__(self, s: PairSet) -> int:
        return self.objective(s) - self.objective.offset

    def __str__(self) -> str:
        return '(%s) - %d' % (self.objective, self.objective.offset)


def shifted(f: Objective) -> Objective:
    if f.offset == 0:
        return f
    return ShiftedObjective(f)


class ScaledCompositeValue(NamedTuple):
    """|H| times the composite objective, with its goal alpha * |H|"""

    value: int
    threshold: int

    @property
    def satisfied(self) -> bool:
        return self.value >= self.threshold


def f_bar_scaled(inst: 'Instance', s: PairSet) -> ScaledCompositeValue:
    alpha = inst.alpha
    mask = inst.version_mask(s)
    value = alpha * (inst.n_hypotheses - popcount(mask))
    for h in iter_bits(mask):
        value += min(alpha, inst.objectives[h](s))
    return ScaledCompositeValue(value, inst.threshold)


def f_bar_satisfied(inst: 'Instance', s: PairSet) -> bool:
    return f_bar_scaled(inst, s).satisfied


class CompositeObjective(Objective):
    """s -> f_bar_scaled(inst, s).value as an Objective of its own"""

    def __init__(self, inst: 'Instance') -> None:
        self.inst = inst
        self.offset = f_bar_scaled(inst, EMPTY).value

    def __call__(self, s: PairSet) -> int:
        return f_bar_scaled(self.inst, s).value

    def __str__(self) -> str:
        return 'CompositeObjective(%r)' % (self.inst,)


class CompositeState(object):
    """
    The scaled composite value of one PairSet together with its version
    space mask and the truncated value ``min(alpha, F_h(s))`` of every
    hypothesis still in it. Extending the state re-evaluates only the
    unsaturated hypotheses, which relies on every F_h being monotone.
    """

    __slots__ = ('inst', 'pairs', 'mask', 'capped', 'value')

    def __init__(
        self,
        inst: 'Instance',
        pairs: PairSet = EMPTY,
        mask: Optional[int] = None,
        capped: Optional[Dict[int, int]] = None,
    ) -> None:
        alpha = inst.alpha
        self.inst = inst
        self.pairs = pairs
        self.mask = inst.version_mask(pairs) if mask is None else mask
        if capped is None:
            capped = {
                h: min(alpha, inst.objectives[h](pairs))
                for h in iter_bits(self.mask)
            }
        self.capped = capped
        self.value = (
            alpha * (inst.n_hypotheses - len(capped)) + sum(capped.values())
        )

    @property
    def threshold(self) -> int:
        return self.inst.threshold

    @property
    def satisfied(self) -> bool:
        return self.value >= self.inst.threshold

    @property
    def scaled(self) -> ScaledCompositeValue:
        return ScaledCompositeValue(self.value, self.inst.threshold)

    def _extended(self, pair: Pair) -> Dict[int, int]:
        inst = self.inst
        alpha = inst.alpha
        new_mask = self.mask & inst.table.consistent_mask(pair)
        extended = self.pairs | {pair}
        objectives = inst.objectives
        capped = {}
        for h, current in self.capped.items():
            if not (new_mask >> h) & 1:
                continue
            if current >= alpha:
                capped[h] = alpha
            else:
                capped[h] = min(alpha, objectives[h](extended))
        return capped

    def extended_value(self, pair: Pair) -> int:
        if pair in self.pairs:
            return self.value
        capped = self._extended(pair)
        return (
            self.inst.alpha * (self.inst.n_hypotheses - len(capped))
            + sum(capped.values())
        )

    def gain(self, pair: Pair) -> int:
        return self.extended_value(pair) - self.value

    def extend(self, pair: Pair) -> 'CompositeState':
        if pair in self.pairs:
            return self
        capped = self._extended(pair)
        new_mask = 0
        for h in capped:
            new_mask |= 1 << h
        return CompositeState(
            self.inst, self.pairs | {pair}, new_mask, capped
        )

    def __repr__(self) -> str:
        return 'CompositeState(value=%d, threshold=%d, |V|=%d)' % (
            self.value, self.inst.threshold, len(self.capped)
        )
