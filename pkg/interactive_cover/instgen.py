from fractions import Fraction
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from . import constants
from .errors import ParameterError
from .instance import Instance, ResponseTable
from .netapp import HypothesisClass, build_dominating_instance
from .objectives import (
    CoverageObjective, ElimCountObjective, MaxCoverageObjective,
    ModularObjective, set_cover_objective,
)
from .utils import as_fraction


def _check_costs(cheap: Any, expensive: Any) -> Tuple[Fraction, Fraction]:
    cheap, expensive = as_fraction(cheap), as_fraction(expensive)
    if cheap <= 0:
        raise ParameterError('cheap cost must be positive, got %s' % cheap)
    if expensive <= cheap:
        raise ParameterError(
            'expensive cost %s must exceed cheap cost %s' % (expensive, cheap)
        )
    return cheap, expensive


def gen_naive_greedy_counterexample(
    alpha: int = 3,
    cheap: Any = constants.DEFAULT_CHEAP,
    expensive: Any = constants.DEFAULT_EXPENSIVE,
) -> Instance:
    """
    Two hypotheses and a single response. q0 alone covers h0 and q1 alone
    covers h1 cheaply; the alpha expensive questions q2.. add 1 to both.
    Greedy on the raw objectives buys the expensive questions.
    """
    if alpha < 2:
        raise ParameterError('alpha must be at least 2, got %r' % (alpha,))
    cheap, expensive = _check_costs(cheap, expensive)
    n_queries = alpha + 2

    valid = {(q, h): (0,) for q in range(n_queries) for h in range(2)}
    shared = {(q, 0): 1 for q in range(2, n_queries)}
    objectives = [
        ModularObjective({**shared, (0, 0): alpha}),
        ModularObjective({**shared, (1, 0): alpha}),
    ]
    return Instance(
        table=ResponseTable(2, n_queries, 1, valid),
        costs=[cheap, cheap] + [expensive] * alpha,
        objectives=objectives,
        alpha=alpha,
    )


def gen_identify_hard_instance(
    n: int = 5,
    cheap: Any = constants.DEFAULT_CHEAP,
    expensive: Any = constants.DEFAULT_EXPENSIVE,
) -> Instance:
    """
    n hypotheses; q_i (i < n) answers 1 only for h_i, the cheap last
    question answers 0 for everyone and alone satisfies every hypothesis.
    Identifying the target first costs n - 1 expensive questions.
    """
    if n < 2:
        raise ParameterError('n must be at least 2, got %r' % (n,))
    cheap, expensive = _check_costs(cheap, expensive)

    valid = {}
    for h in range(n):
        for q in range(n):
            valid[(q, h)] = (1,) if q == h else (0,)
        valid[(n, h)] = (0,)
    objective = MaxCoverageObjective({(n, 0): 1})
    return Instance(
        table=ResponseTable(n, n + 1, 2, valid),
        costs=[expensive] * n + [cheap],
        objectives=[objective] * n,
        alpha=1,
    )


def gen_threshold_line(k: int) -> Instance:
    """
    2^k hypotheses on a line; q_i answers 1 for h_j iff i <= j. The goal is
    identification: the elimination count must reach |H| - 1.
    """
    if k < 1:
        raise ParameterError('k must be at least 1, got %r' % (k,))
    size = 1 << k
    valid = {
        (q, h): (1,) if q <= h else (0,)
        for q in range(size) for h in range(size)
    }
    table = ResponseTable(size, size, 2, valid)
    objective = ElimCountObjective(table)
    return Instance(
        table=table,
        costs=[1] * size,
        objectives=[objective] * size,
        alpha=size - 1,
    )


def _check_sets(sets: Sequence[Iterable[Hashable]]) -> List[frozenset]:
    checked = [frozenset(items) for items in sets]
    if not checked:
        raise ParameterError('no sets given')
    for index, items in enumerate(checked):
        if not items:
            raise ParameterError('set %d is empty' % index)
    return checked


def _set_costs(sets: Sequence[Any], costs: Optional[Sequence[Any]]) -> List[Any]:
    if costs is None:
        return [1] * len(sets)
    if len(costs) != len(sets):
        raise ParameterError(
            'expected %d costs, got %d' % (len(sets), len(costs))
        )
    return list(costs)


def reduce_set_cover_single_h(
    sets: Sequence[Iterable[Hashable]],
    costs: Optional[Sequence[Any]] = None,
) -> Instance:
    """One hypothesis, one response; F counts covered items, alpha = |items|"""
    checked = _check_sets(sets)
    universe = frozenset().union(*checked)
    n_queries = len(checked)
    valid = {(q, 0): (0,) for q in range(n_queries)}
    return Instance(
        table=ResponseTable(1, n_queries, 1, valid),
        costs=_set_costs(checked, costs),
        objectives=[set_cover_objective(checked)],
        alpha=len(universe),
    )


def reduce_set_cover_multi_h(
    sets: Sequence[Iterable[Hashable]],
    costs: Optional[Sequence[Any]] = None,
) -> Instance:
    """One hypothesis per item, one response; F_h is 1 once item h is covered"""
    checked = _check_sets(sets)
    items = sorted(frozenset().union(*checked))
    n_queries = len(checked)
    valid = {
        (q, h): (0,) for q in range(n_queries) for h in range(len(items))
    }
    cover = {(q, 0): items_of for q, items_of in enumerate(checked)}
    return Instance(
        table=ResponseTable(len(items), n_queries, 1, valid),
        costs=_set_costs(checked, costs),
        objectives=[CoverageObjective(cover, items=[item]) for item in items],
        alpha=1,
    )


CARTOON_NODES = (
    'a1', 'a2', 'a3', 'b1', 'b2', 'b3', 'c1', 'c2', 'c3', 'd1', 'd2', 'd3',
    'v', 'x', 'w',
)

CARTOON_EDGES = (
    ('a1', 'a2'), ('a1', 'a3'), ('a1', 'v'),
    ('x', 'v'), ('x', 'b1'), ('x', 'b2'), ('x', 'b3'),
    ('c1', 'c2'), ('c1', 'c3'),
    ('w', 'd1'), ('w', 'd2'), ('w', 'd3'),
)

CARTOON_GROUPS = (
    ('a1', 'a2', 'a3', 'v'),
    ('b1', 'b2', 'b3', 'v'),
    ('c1', 'c2', 'c3'),
    ('d1', 'd2', 'd3'),
)


def gen_cartoon() -> Tuple[nx.Graph, HypothesisClass, Instance]:
    """
    The 15-user advertising example: four candidate target groups A, B, C,
    D where v belongs to A and B only, x is the hub of B and w the hub of D.
    """
    ids = {label: node for node, label in enumerate(CARTOON_NODES)}
    graph = nx.Graph()
    for label, node in ids.items():
        graph.add_node(node, label=label)
    graph.add_edges_from((ids[u], ids[v]) for u, v in CARTOON_EDGES)
    hc = [
        frozenset(ids[label] for label in group) for group in CARTOON_GROUPS
    ]
    return graph, hc, build_dominating_instance(graph, hc)


def _parse_sets(spec: str) -> List[List[int]]:
    """``1,2;2,3;3`` -> [[1, 2], [2, 3], [3]]"""
    try:
        return [
            [int(item) for item in part.split(',') if item.strip()]
            for part in spec.split(';')
        ]
    except ValueError:
        raise ParameterError('bad set list %r' % spec)


GENERATORS: Dict[str, Callable[..., Instance]] = {
    'naive-greedy-counterexample': gen_naive_greedy_counterexample,
    'identify-hard': gen_identify_hard_instance,
    'threshold-line': gen_threshold_line,
    'set-cover-single': lambda sets='1,2;2,3;3': reduce_set_cover_single_h(
        _parse_sets(sets)
    ),
    'set-cover-multi': lambda sets='1,2;2,3;3': reduce_set_cover_multi_h(
        _parse_sets(sets)
    ),
    'cartoon': lambda: gen_cartoon()[2],
}


def generate(name: str, **params: Any) -> Instance:
    """Build a named construction; ``params`` are passed to its generator"""
    try:
        generator = GENERATORS[name]
    except KeyError:
        raise ParameterError(
            'unknown instance %r, expected one of %s'
            % (name, ', '.join(sorted(GENERATORS)))
        )
    try:
        return generator(**params)
    except TypeError as e:
        raise ParameterError('bad parameters for %s: %s' % (name, e))
