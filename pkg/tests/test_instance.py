import mock
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interactive_cover.config import BruteForceLimits
from interactive_cover.errors import MalformedPairError
from interactive_cover.instance import (
    EMPTY, Instance, ResponseTable, pair_set, validate_instance,
    version_space, version_space_size,
)
from interactive_cover.instgen import gen_threshold_line
from interactive_cover.objectives import ModularObjective, Objective

from .factories import small_instances


class ConstantObjective(Objective):
    def __call__(self, s):
        return 1


class SquareObjective(Objective):
    """Supermodular: |s| squared"""

    def __call__(self, s):
        return len(s) ** 2


def two_question_instance(**kwargs):
    valid = {(0, 0): [0], (0, 1): [1], (1, 0): [0, 1], (1, 1): [1]}
    fields = dict(
        table=ResponseTable(2, 2, 2, valid),
        costs=[1, 2],
        objectives=[ModularObjective({(0, 0): 1}), ModularObjective({})],
        alpha=1,
    )
    fields.update(kwargs)
    return Instance(**fields)


def test_response_table():
    table = two_question_instance().table
    assert table.valid_responses(1, 0) == frozenset({0, 1})
    assert table.valid_responses(5, 0) == frozenset()
    assert table.responses_for(0) == (0, 1)
    assert table.responses_for(1, mask=0b10) == (1,)
    assert table.consistent_mask((1, 1)) == 0b11
    assert table.consistent_mask((0, 0)) == 0b01
    assert table.version_mask([(0, 1), (1, 1)]) == 0b10
    assert table.unknown_pairs() == []
    assert table.version_mask([(0, 1)], mask=0b01) == 0

    stray = ResponseTable(1, 1, 1, {(0, 0): [0], (2, 0): [0], (0, -1): [0]})
    assert stray.unknown_pairs() == [(0, -1), (2, 0)]
    assert stray.valid_responses(0, 0) == frozenset({0})


def test_version_space(identify_hard_instance):
    inst = identify_hard_instance
    assert version_space(inst, EMPTY) == frozenset(range(5))
    assert version_space(inst, {(0, 0)}) == frozenset({1, 2, 3, 4})
    assert version_space(inst, {(0, 1)}) == frozenset({0})
    assert version_space(inst, {(0, 0), (1, 0), (2, 0)}) == frozenset({3, 4})
    assert version_space_size(inst, {(0, 0)}) == 4


def test_version_space_unanswerable_pair(identify_hard_instance):
    # the last question answers 0 for everyone
    assert version_space(identify_hard_instance, {(5, 1)}) == frozenset()


@pytest.mark.parametrize('pair', [(6, 0), (-1, 0), (0, 2), (0, -1)])
def test_version_space_malformed(identify_hard_instance, pair):
    with pytest.raises(MalformedPairError):
        version_space(identify_hard_instance, {pair})


@settings(max_examples=200, deadline=None)
@given(small_instances(), st.data())
def test_version_space_shrinks_as_pairs_are_added(inst, data):
    ground = [(q, r) for q in inst.queries for r in inst.responses]
    pairs = data.draw(st.lists(st.sampled_from(ground), max_size=len(ground)))
    s = EMPTY
    space = version_space(inst, s)
    assert space == frozenset(inst.hypotheses)
    for pair in pairs:
        s = s | {pair}
        smaller = version_space(inst, s)
        assert smaller <= space
        assert version_space_size(inst, s) == len(smaller)
        space = smaller


def test_pair_set():
    assert pair_set([(1, 0), (1, 0), (2, 1)]) == frozenset({(1, 0), (2, 1)})
    assert pair_set() == EMPTY


def test_instance_properties():
    inst = two_question_instance(labels=['left', 'right'])
    assert inst.threshold == 2
    assert list(inst.queries) == [0, 1]
    assert inst.label(1) == 'right'
    assert two_question_instance().label(1) == 'q1'
    assert inst.replace(alpha=3).alpha == 3
    assert inst.replace(alpha=3).table is inst.table
    assert repr(inst) == 'Instance(|H|=2, |Q|=2, |R|=2, alpha=1)'


def test_validate_generated_instances(
    naive_greedy_instance, identify_hard_instance, cartoon_instance
):
    assert validate_instance(naive_greedy_instance) == []
    assert validate_instance(identify_hard_instance) == []
    assert validate_instance(cartoon_instance) == []
    assert validate_instance(gen_threshold_line(3)) == []


@pytest.mark.parametrize('kwargs,fragment', [
    ({'costs': [1, 0]}, 'cost of q1 is not positive'),
    ({'costs': [1]}, 'expected 2 costs'),
    ({'alpha': 0}, 'alpha must be a positive integer'),
    ({'alpha': True}, 'alpha must be a positive integer'),
    ({'objectives': [ModularObjective({})]}, 'expected 2 objectives'),
    ({'objectives': [ModularObjective({}), ConstantObjective()]},
     'objective of h1 is not normalized'),
    ({'table': ResponseTable(2, 2, 2, {(0, 0): [0], (0, 1): [1]})},
     'valid_responses(q1, h0) is empty'),
    ({'table': ResponseTable(
        2, 2, 2, {(0, 0): [0], (0, 1): [3], (1, 0): [0], (1, 1): [0]})},
     'unknown responses [3]'),
    ({'table': ResponseTable(
        2, 2, 2,
        {(0, 0): [0], (0, 1): [1], (1, 0): [0], (1, 1): [1], (7, 3): [0]})},
     'valid_responses has unknown pair (q7, h3)'),
])
def test_validate_violations(kwargs, fragment):
    violations = validate_instance(two_question_instance(**kwargs))
    assert any(fragment in violation for violation in violations), violations


def test_validate_exhaustive():
    inst = two_question_instance(
        objectives=[ModularObjective({}), SquareObjective()]
    )
    assert validate_instance(inst) == []
    violations = validate_instance(inst, exhaustive=True)
    assert len(violations) == 1
    assert violations[0].startswith('objective of h1: not submodular')


def test_validate_exhaustive_skips_large_ground():
    inst = two_question_instance(
        objectives=[ModularObjective({}), SquareObjective()]
    )
    logger = mock.MagicMock()
    violations = validate_instance(
        inst, exhaustive=True, limits=BruteForceLimits(max_ground=2),
        logger=logger,
    )
    assert violations == []
    assert logger.warning.call_count == 2
