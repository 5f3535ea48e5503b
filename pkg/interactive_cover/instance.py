import logging
from fractions import Fraction
from typing import (
    TYPE_CHECKING, AbstractSet, Any, Dict, FrozenSet, Iterable, List,
    Mapping, Optional, Sequence, Tuple,
)

from .errors import MalformedPairError, SizeError
from .utils import as_fraction, full_mask, iter_bits, popcount

if TYPE_CHECKING:  # pragma: no cover
    from .config import BruteForceLimits
    from .objectives import Objective


default_logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
PairSet = FrozenSet[Pair]
ValidMap = Mapping[Tuple[int, int], Iterable[int]]

EMPTY: PairSet = frozenset()


def pair_set(pairs: Iterable[Pair] = ()) -> PairSet:
    return frozenset((int(q), int(r)) for q, r in pairs)


class ResponseTable(object):
    """
    The known question/hypothesis/response structure: which responses
    ``q(h)`` each hypothesis allows for each question. Version spaces are
    int bitmasks over hypothesis ids; for every pair (q, r) the table keeps
    the mask of hypotheses accepting r for q, so the version space of a
    PairSet is the AND of its pairs' masks.
    """

    __slots__ = (
        'n_hypotheses', 'n_queries', 'n_responses', '_valid', '_accept',
        '_query_responses', 'all_hypotheses',
    )

    def __init__(
        self,
        n_hypotheses: int,
        n_queries: int,
        n_responses: int,
        valid: ValidMap,
    ) -> None:
        self.n_hypotheses = n_hypotheses
        self.n_queries = n_queries
        self.n_responses = n_responses
        self.all_hypotheses = full_mask(n_hypotheses)

        self._valid: Dict[Tuple[int, int], FrozenSet[int]] = {}
        for (q, h), responses in valid.items():
            self._valid[(q, h)] = frozenset(responses)

        accept: Dict[Pair, int] = {}
        query_responses: List[set] = [set() for _ in range(n_queries)]
        for (q, h), responses in self._valid.items():
            if not (0 <= q < n_queries and 0 <= h < n_hypotheses):
                continue
            for r in responses:
                accept[(q, r)] = accept.get((q, r), 0) | (1 << h)
                query_responses[q].add(r)
        self._accept = accept
        self._query_responses = tuple(
            tuple(sorted(responses)) for responses in query_responses
        )

    def valid_responses(self, q: int, h: int) -> FrozenSet[int]:
        return self._valid.get((q, h), frozenset())

    def unknown_pairs(self) -> List[Tuple[int, int]]:
        """Sorted (q, h) keys of the valid map outside the table's range."""
        return sorted(
            (q, h) for q, h in self._valid
            if not (0 <= q < self.n_queries and 0 <= h < self.n_hypotheses)
        )

    def responses_for(self, q: int, mask: Optional[int] = None) -> Tuple[int, ...]:
        """
        Sorted responses to q that some hypothesis in mask accepts
        (every hypothesis when mask is None).
        """
        if mask is None or mask == self.all_hypotheses:
            return self._query_responses[q]
        return tuple(
            r for r in self._query_responses[q]
            if self._accept[(q, r)] & mask
        )

    def check_pair(self, pair: Pair) -> None:
        q, r = pair
        if not 0 <= q < self.n_queries:
            raise MalformedPairError('unknown query id %r' % (q,))
        if not 0 <= r < self.n_responses:
            raise MalformedPairError('unknown response id %r' % (r,))

    def consistent_mask(self, pair: Pair) -> int:
        """Hypotheses for which the response of pair is valid"""
        mask = self._accept.get(pair)
        if mask is None:
            self.check_pair(pair)
            return 0
        return mask

    def version_mask(self, pairs: Iterable[Pair], mask: Optional[int] = None) -> int:
        if mask is None:
            mask = self.all_hypotheses
        for pair in pairs:
            mask &= self.consistent_mask(pair)
        return mask

    def __repr__(self) -> str:
        return 'ResponseTable(|H|=%d, |Q|=%d, |R|=%d)' % (
            self.n_hypotheses, self.n_queries, self.n_responses
        )


class Instance(object):
    """
    An interactive submodular set cover instance: a response table, modular
    query costs, one objective per hypothesis and the integer threshold
    alpha. Instances are immutable after construction.
    """

    __slots__ = ('table', 'costs', 'objectives', 'alpha', 'labels')

    def __init__(
        self,
        table: ResponseTable,
        costs: Sequence[Any],
        objectives: Sequence['Objective'],
        alpha: int,
        labels: Optional[Sequence[str]] = None,
    ) -> None:
        self.table = table
        self.costs: Tuple[Fraction, ...] = tuple(as_fraction(c) for c in costs)
        self.objectives: Tuple['Objective', ...] = tuple(objectives)
        self.alpha = alpha
        self.labels: Optional[Tuple[str, ...]] = (
            tuple(labels) if labels is not None else None
        )

    @property
    def n_hypotheses(self) -> int:
        return self.table.n_hypotheses

    @property
    def n_queries(self) -> int:
        return self.table.n_queries

    @property
    def n_responses(self) -> int:
        return self.table.n_responses

    @property
    def hypotheses(self) -> range:
        return range(self.table.n_hypotheses)

    @property
    def queries(self) -> range:
        return range(self.table.n_queries)

    @property
    def responses(self) -> range:
        return range(self.table.n_responses)

    @property
    def threshold(self) -> int:
        """alpha * |H|: the scaled composite value of a finished run"""
        return self.alpha * self.table.n_hypotheses

    def valid_responses(self, q: int, h: int) -> FrozenSet[int]:
        return self.table.valid_responses(q, h)

    def version_mask(self, pairs: Iterable[Pair], mask: Optional[int] = None) -> int:
        return self.table.version_mask(pairs, mask)

    def label(self, q: int) -> str:
        if self.labels is not None:
            return self.labels[q]
        return 'q%d' % q

    def replace(self, **kwargs: Any) -> 'Instance':
        fields = {
            'table': self.table,
            'costs': self.costs,
            'objectives': self.objectives,
            'alpha': self.alpha,
            'labels': self.labels,
        }
        fields.update(kwargs)
        return Instance(**fields)

    def __repr__(self) -> str:
        return 'Instance(|H|=%d, |Q|=%d, |R|=%d, alpha=%d)' % (
            self.n_hypotheses, self.n_queries, self.n_responses, self.alpha
        )


def version_space(inst: Instance, s: AbstractSet[Pair]) -> FrozenSet[int]:
    """Hypotheses consistent with every question-response pair in s"""
    return frozenset(iter_bits(inst.version_mask(s)))


def version_space_size(inst: Instance, s: AbstractSet[Pair]) -> int:
    return popcount(inst.version_mask(s))


def validate_instance(
    inst: Instance,
    exhaustive: bool = False,
    limits: Optional['BruteForceLimits'] = None,
    logger: Optional[logging.Logger] = None,
) -> List[str]:
    """
    Describe every violated Instance invariant; an empty list means the
    instance is well-formed. With ``exhaustive`` the objectives are also
    checked for monotonicity and submodularity over the full Q x R ground
    set, which is exponential in its size.
    """
    logger = logger or default_logger
    table = inst.table
    violations = []

    if table.n_hypotheses < 1:
        violations.append('hypothesis class is empty')
    if table.n_queries < 1:
        violations.append('query set is empty')

    for q in inst.queries:
        for h in inst.hypotheses:
            responses = table.valid_responses(q, h)
            if not responses:
                violations.append(
                    'valid_responses(q%d, h%d) is empty' % (q, h)
                )
                continue
            unknown = sorted(
                r for r in responses if not 0 <= r < table.n_responses
            )
            if unknown:
                violations.append(
                    'valid_responses(q%d, h%d) has unknown responses %s'
                    % (q, h, unknown)
                )

    for q, h in table.unknown_pairs():
        violations.append('valid_responses has unknown pair (q%d, h%d)' % (q, h))

    if len(inst.costs) != table.n_queries:
        violations.append(
            'expected %d costs, got %d' % (table.n_queries, len(inst.costs))
        )
    for q, cost in enumerate(inst.costs):
        if cost <= 0:
            violations.append('cost of q%d is not positive: %s' % (q, cost))

    if isinstance(inst.alpha, bool) or not isinstance(inst.alpha, int) \
            or inst.alpha < 1:
        violations.append('alpha must be a positive integer: %r' % (inst.alpha,))

    if len(inst.objectives) != table.n_hypotheses:
        violations.append(
            'expected %d objectives, got %d'
            % (table.n_hypotheses, len(inst.objectives))
        )

    for h, objective in enumerate(inst.objectives):
        value = objective(EMPTY)
        if isinstance(value, bool) or not isinstance(value, int):
            violations.append('objective of h%d is not integer-valued' % h)
        elif value != objective.offset:
            violations.append(
                'objective of h%d is not normalized: F(empty) = %d'
                % (h, value)
            )

    if exhaustive and not violations:
        violations.extend(_exhaustive_violations(inst, limits, logger))

    return violations


def _exhaustive_violations(
    inst: Instance,
    limits: Optional['BruteForceLimits'],
    logger: logging.Logger,
) -> List[str]:
    from .objectives import shifted
    from .verify import check_submodular_monotone

    ground = [
        (q, r) for q in inst.queries for r in inst.table.responses_for(q)
    ]
    violations = []
    for h, objective in enumerate(inst.objectives):
        try:
            witness = check_submodular_monotone(
                shifted(objective), ground, limits=limits
            )
        except SizeError as e:
            logger.warning('Skipping exhaustive check of h%d: %s', h, e)
            continue
        if witness is not None:
            violations.append('objective of h%d: %s' % (h, witness))
    return violations
