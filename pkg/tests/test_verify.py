import math
from fractions import Fraction

import pytest

from interactive_cover.config import BruteForceLimits
from interactive_cover.errors import SizeError
from interactive_cover.instance import EMPTY, Instance, ResponseTable
from interactive_cover.instgen import (
    gen_identify_hard_instance, gen_naive_greedy_counterexample,
    gen_threshold_line, reduce_set_cover_multi_h, reduce_set_cover_single_h,
)
from interactive_cover.objectives import ModularObjective, Objective
from interactive_cover.oracles import AdversarialOracle
from interactive_cover.policies import (
    GreedyPolicy, GreedyStep, LearnThenCoverPolicy, NaiveGreedyPolicy,
)
from interactive_cover.runner import run_policy
from interactive_cover.verify import (
    INFINITY, Counterexample, audit_bounds, brute_gcc,
    brute_optimal_adaptive_cost, brute_optimal_nonadaptive_cost,
    check_submodular_monotone, greedy_cost_bound, progress_violations,
    worst_case_policy_cost,
)

from .factories import random_instance


GROUND = [(0, 0), (1, 0), (2, 0)]


class FunctionObjective(Objective):
    def __init__(self, function):
        self.function = function

    def __call__(self, s):
        return self.function(s)


def test_check_submodular_monotone_passes():
    f = ModularObjective({(0, 0): 2, (2, 0): 1})
    assert check_submodular_monotone(f, GROUND) is None


def test_check_not_normalized():
    witness = check_submodular_monotone(FunctionObjective(lambda s: 1), GROUND)
    assert witness.kind == 'normalized'
    assert str(witness) == 'not normalized: F(empty) != 0'


def test_check_not_monotone():
    f = FunctionObjective(lambda s: int(len(s) == 1))
    witness = check_submodular_monotone(f, GROUND)
    assert witness == Counterexample(
        'monotone', frozenset({(0, 0)}), frozenset({(0, 0)}), (1, 0)
    )


def test_check_not_submodular():
    f = FunctionObjective(lambda s: len(s) ** 2)
    witness = check_submodular_monotone(f, GROUND)
    assert witness == Counterexample(
        'submodular', EMPTY, frozenset({(0, 0)}), (1, 0)
    )
    assert str(witness).startswith('not submodular: (1, 0) gains more')


def test_check_ground_limit():
    f = ModularObjective({})
    with pytest.raises(SizeError):
        check_submodular_monotone(f, GROUND, BruteForceLimits(max_ground=2))


def test_naive_greedy_counterexample_golden(naive_greedy_instance):
    inst = naive_greedy_instance
    assert worst_case_policy_cost(inst, GreedyPolicy)[0] == 2
    assert worst_case_policy_cost(inst, NaiveGreedyPolicy)[0] == 30
    assert brute_gcc(inst) == 2
    assert brute_optimal_adaptive_cost(inst) == 2
    assert brute_optimal_nonadaptive_cost(inst) == 2


def test_identify_hard_golden(identify_hard_instance):
    inst = identify_hard_instance
    assert worst_case_policy_cost(inst, GreedyPolicy)[0] == 1
    assert worst_case_policy_cost(inst, LearnThenCoverPolicy)[0] == 41
    assert brute_optimal_adaptive_cost(inst) == 1
    assert brute_gcc(inst) == 1


@pytest.mark.parametrize('k', [1, 2, 3, 4])
def test_threshold_line_adaptivity_gap(k):
    inst = gen_threshold_line(k)
    greedy, _ = worst_case_policy_cost(inst, GreedyPolicy)
    nonadaptive = brute_optimal_nonadaptive_cost(inst)
    assert greedy == k
    assert nonadaptive == 2 ** k - 1
    assert nonadaptive / greedy >= (2 ** k - 1) / k


@pytest.mark.parametrize('k', [1, 2, 3])
def test_threshold_line_optimal_adaptive(k):
    assert brute_optimal_adaptive_cost(gen_threshold_line(k)) == k


def test_threshold_line_gap_grows():
    ratios = []
    for k in (1, 2, 3):
        inst = gen_threshold_line(k)
        adaptive = brute_optimal_adaptive_cost(inst)
        ratios.append(Fraction(brute_optimal_nonadaptive_cost(inst), adaptive))
    assert ratios == [1, Fraction(3, 2), Fraction(7, 3)]


def test_learn_then_cover_gap_grows():
    ratios = []
    for n in (2, 3, 4, 5):
        inst = gen_identify_hard_instance(n, cheap=1, expensive=10)
        learn, _ = worst_case_policy_cost(inst, LearnThenCoverPolicy)
        greedy, _ = worst_case_policy_cost(inst, GreedyPolicy)
        assert learn == (n - 1) * 10 + 1
        assert greedy == 1
        ratios.append(Fraction(learn, greedy))
    assert ratios == sorted(set(ratios))


def test_naive_greedy_gap_grows():
    ratios = []
    for alpha in (2, 3, 4):
        inst = gen_naive_greedy_counterexample(alpha, cheap=1, expensive=10)
        naive, _ = worst_case_policy_cost(inst, NaiveGreedyPolicy)
        greedy, _ = worst_case_policy_cost(inst, GreedyPolicy)
        assert naive == alpha * 10
        assert greedy == 2
        ratios.append(Fraction(naive, greedy))
    assert ratios == sorted(set(ratios))


def test_optimal_adaptive_cost_monotone_in_alpha():
    for seed in range(30):
        inst = random_instance(seed)
        costs = [
            brute_optimal_adaptive_cost(inst.replace(alpha=alpha))
            for alpha in range(1, inst.alpha + 1)
        ]
        assert costs == sorted(costs), (seed, costs)


def test_cartoon(cartoon_instance, metrics_factory):
    inst = cartoon_instance
    assert brute_optimal_adaptive_cost(
        inst, metrics_factory=metrics_factory
    ) == 3
    assert metrics_factory.gauges['icover:brute_states'] > 0
    assert brute_optimal_nonadaptive_cost(inst) == 4
    greedy, _ = worst_case_policy_cost(inst, GreedyPolicy)
    assert greedy <= 3


@pytest.mark.parametrize('reduce', [
    reduce_set_cover_single_h, reduce_set_cover_multi_h,
])
def test_set_cover_reductions(set_cover_sets, reduce):
    inst = reduce(set_cover_sets)
    assert brute_optimal_adaptive_cost(inst) == 2
    assert brute_optimal_nonadaptive_cost(inst) == 2
    assert brute_gcc(inst) == 2


def classical_greedy_set_cover(sets):
    uncovered = set().union(*sets)
    chosen = []
    while uncovered:
        best = max(
            range(len(sets)), key=lambda i: (len(sets[i] & uncovered), -i)
        )
        chosen.append(best)
        uncovered -= sets[best]
    return chosen


def test_single_hypothesis_greedy_is_classical(set_cover_sets):
    inst = reduce_set_cover_single_h(set_cover_sets)
    transcript = run_policy(inst, GreedyPolicy(), AdversarialOracle(0))
    assert list(transcript.queries) == \
        classical_greedy_set_cover(set_cover_sets)


def test_size_limits(cartoon_instance, naive_greedy_instance):
    with pytest.raises(SizeError):
        brute_gcc(cartoon_instance)
    limits = BruteForceLimits(max_states=1)
    with pytest.raises(SizeError):
        brute_optimal_adaptive_cost(cartoon_instance, limits)
    with pytest.raises(SizeError):
        brute_optimal_adaptive_cost(
            naive_greedy_instance, BruteForceLimits(adaptive_max_queries=2)
        )
    with pytest.raises(SizeError):
        brute_optimal_nonadaptive_cost(
            naive_greedy_instance, BruteForceLimits(nonadaptive_max_queries=2)
        )


def test_nonadaptive_assignment_limit():
    valid = {(q, 0): (0, 1) for q in range(3)}
    weights = {(q, r): 1 for q in range(3) for r in range(2)}
    inst = Instance(
        ResponseTable(1, 3, 2, valid), [1, 1, 1], [ModularObjective(weights)], 3
    )
    assert brute_optimal_nonadaptive_cost(inst) == 3
    with pytest.raises(SizeError):
        brute_optimal_nonadaptive_cost(inst, BruteForceLimits(max_assignments=4))


def hopeless_instance():
    return Instance(
        ResponseTable(1, 1, 1, {(0, 0): (0,)}), [1], [ModularObjective({})], 1
    )


def test_infeasible_costs_are_infinite():
    inst = hopeless_instance()
    assert brute_gcc(inst) == INFINITY
    assert brute_optimal_adaptive_cost(inst) == INFINITY
    assert brute_optimal_nonadaptive_cost(inst) == INFINITY
    assert worst_case_policy_cost(inst, GreedyPolicy)[0] == INFINITY

    report = audit_bounds(inst)
    assert report.to_dict()['gcc'] == 'inf'
    assert report.to_dict()['bound_value'] == 'inf'


def test_progress_violations(naive_greedy_instance):
    inst = naive_greedy_instance
    _, policies = worst_case_policy_cost(inst, GreedyPolicy)
    for policy in policies.values():
        assert progress_violations(inst, policy.history, Fraction(2)) == []

    bad = [GreedyStep(2, 2, 0, Fraction(10))]
    assert progress_violations(inst, bad, Fraction(2)) == [
        'q2 gains 2 at cost 10, needs 30'
    ]
    assert progress_violations(inst, bad, INFINITY) == []


def test_greedy_cost_bound(naive_greedy_instance):
    assert greedy_cost_bound(naive_greedy_instance, Fraction(2)) == \
        pytest.approx(2 * (1 + math.log(6)))
    assert greedy_cost_bound(naive_greedy_instance, INFINITY) == INFINITY


def test_audit_bounds(naive_greedy_instance, tracer):
    report = audit_bounds(naive_greedy_instance, tracer=tracer)
    assert report.passed
    assert report.greedy_cost == 2
    assert report.gcc == 2
    assert report.optimal_adaptive_cost == 2
    assert report.optimal_nonadaptive_cost == 2
    assert report.violations == []

    document = report.to_dict()
    assert document['greedy_cost'] == [2, 1]
    assert document['passed'] is True

    names = [span.operation_name for span in tracer.finished_spans()]
    assert names.count('run_policy') == 2
    assert names[-1] == 'audit_bounds'


def test_audit_bounds_random_instances():
    audited = 0
    for seed in range(50):
        inst = random_instance(seed)
        report = audit_bounds(inst)
        assert report.optimal_adaptive_cost != INFINITY, seed
        assert report.passed, (seed, report.violations)
        audited += 1
    assert audited == 50
