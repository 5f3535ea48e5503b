from fractions import Fraction

import pytest

from interactive_cover.errors import ParameterError
from interactive_cover.instance import EMPTY, validate_instance
from interactive_cover.instgen import (
    CARTOON_NODES, _parse_sets, gen_cartoon, gen_identify_hard_instance,
    gen_naive_greedy_counterexample, gen_threshold_line, generate,
    reduce_set_cover_multi_h, reduce_set_cover_single_h,
)


def test_naive_greedy_counterexample_shape(naive_greedy_instance):
    inst = naive_greedy_instance
    assert (inst.n_hypotheses, inst.n_queries, inst.n_responses) == (2, 5, 1)
    assert inst.costs == (1, 1, 10, 10, 10)
    assert inst.alpha == 3
    assert validate_instance(inst, exhaustive=True) == []

    f0, f1 = inst.objectives
    assert f0(frozenset({(0, 0)})) == 3
    assert f1(frozenset({(0, 0)})) == 0
    assert f1(frozenset({(2, 0), (3, 0), (4, 0)})) == 3


@pytest.mark.parametrize('kwargs', [
    {'alpha': 1},
    {'cheap': 0},
    {'cheap': 2, 'expensive': 2},
])
def test_naive_greedy_counterexample_bad_params(kwargs):
    with pytest.raises(ParameterError):
        gen_naive_greedy_counterexample(**kwargs)


def test_identify_hard_shape(identify_hard_instance):
    inst = identify_hard_instance
    assert (inst.n_hypotheses, inst.n_queries, inst.n_responses) == (5, 6, 2)
    assert inst.costs[:5] == (10,) * 5
    assert inst.costs[5] == 1
    assert inst.valid_responses(2, 2) == frozenset({1})
    assert inst.valid_responses(2, 3) == frozenset({0})
    assert inst.valid_responses(5, 4) == frozenset({0})
    assert validate_instance(inst) == []
    for f in inst.objectives:
        assert f(frozenset({(5, 0)})) == 1


def test_identify_hard_bad_params():
    with pytest.raises(ParameterError):
        gen_identify_hard_instance(n=1)


def test_threshold_line_shape():
    inst = gen_threshold_line(2)
    assert (inst.n_hypotheses, inst.n_queries) == (4, 4)
    assert inst.alpha == 3
    assert inst.valid_responses(0, 0) == frozenset({1})
    assert inst.valid_responses(2, 1) == frozenset({0})
    assert inst.valid_responses(2, 3) == frozenset({1})
    assert inst.objectives[0](frozenset({(2, 1)})) == 2

    with pytest.raises(ParameterError):
        gen_threshold_line(0)


def test_set_cover_single_h(set_cover_sets):
    inst = reduce_set_cover_single_h(set_cover_sets, costs=[1, 2, 3])
    assert inst.n_hypotheses == 1
    assert inst.alpha == 3
    assert inst.costs == (1, 2, 3)
    f = inst.objectives[0]
    assert f(EMPTY) == 0
    assert f(frozenset({(0, 0), (2, 0)})) == 3


def test_set_cover_multi_h(set_cover_sets):
    inst = reduce_set_cover_multi_h(set_cover_sets)
    assert inst.n_hypotheses == 3
    assert inst.alpha == 1
    values = [f(frozenset({(1, 0)})) for f in inst.objectives]
    assert values == [0, 1, 1]


@pytest.mark.parametrize('reduce', [
    reduce_set_cover_single_h, reduce_set_cover_multi_h,
])
def test_set_cover_bad_input(reduce):
    with pytest.raises(ParameterError):
        reduce([])
    with pytest.raises(ParameterError):
        reduce([{1}, set()])
    with pytest.raises(ParameterError):
        reduce([{1}, {2}], costs=[1])


def test_cartoon(cartoon):
    graph, hc, inst = cartoon
    assert graph.number_of_nodes() == 15
    assert graph.number_of_edges() == 12
    assert len(hc) == 4
    v = CARTOON_NODES.index('v')
    assert [v in group for group in hc] == [True, True, False, False]
    assert inst.label(v) == 'v'
    assert inst.alpha == 15
    assert validate_instance(inst) == []


def test_parse_sets():
    assert _parse_sets('1,2;2,3;3') == [[1, 2], [2, 3], [3]]
    with pytest.raises(ParameterError):
        _parse_sets('1,x')


def test_generate():
    inst = generate('threshold-line', k=3)
    assert inst.n_hypotheses == 8

    inst = generate('naive-greedy-counterexample', cheap=Fraction(1, 2))
    assert inst.costs[0] == Fraction(1, 2)

    inst = generate('set-cover-single', sets='1,2;3')
    assert inst.alpha == 3

    assert generate('cartoon').n_queries == 15


@pytest.mark.parametrize('name,params', [
    ('no-such-instance', {}),
    ('cartoon', {'k': 1}),
    ('threshold-line', {}),
])
def test_generate_errors(name, params):
    with pytest.raises(ParameterError):
        generate(name, **params)
