import json
import logging
import random
from typing import Any, Dict, Mapping, Optional

from . import constants
from .errors import ParameterError, ProtocolError
from .instance import Instance, PairSet
from .objectives import f_bar_scaled
from .runner import Oracle


default_logger = logging.getLogger(__name__)


def _check_target(inst: Instance, target: Any) -> int:
    if isinstance(target, bool) or not isinstance(target, int) \
            or not 0 <= target < inst.n_hypotheses:
        raise ParameterError('unknown target hypothesis %r' % (target,))
    return target


class AdversarialOracle(Oracle):
    """
    Answers for ``target`` with the valid response that leaves the scaled
    composite value smallest; ties go to the smallest response id.
    """

    name = constants.ORACLE_ADVERSARIAL

    def __init__(self, target: int) -> None:
        self.target = target

    def respond(self, inst: Instance, query: int, pairs: PairSet) -> int:
        responses = sorted(inst.valid_responses(query, self.target))
        if len(responses) == 1:
            return responses[0]
        return min(
            responses,
            key=lambda r: (f_bar_scaled(inst, pairs | {(query, r)}).value, r),
        )

    def __str__(self) -> str:
        return 'adversarial(h%d)' % self.target


class TableOracle(Oracle):
    """Answers from a fixed question -> response table, ignoring history."""

    name = constants.ORACLE_TABLE

    def __init__(self, table: Mapping[int, int]) -> None:
        self.table: Dict[int, int] = {int(q): int(r) for q, r in table.items()}

    def respond(self, inst: Instance, query: int, pairs: PairSet) -> int:
        try:
            return self.table[query]
        except KeyError:
            raise ProtocolError('table oracle has no response for q%d' % query)

    def __str__(self) -> str:
        return 'table(%d entries)' % len(self.table)


class RandomConsistentOracle(Oracle):
    """Draws uniformly from the responses valid for ``target``."""

    name = constants.ORACLE_RANDOM

    def __init__(self, target: int, seed: int) -> None:
        self.target = target
        self.seed = seed
        self.random = random.Random(seed)

    def respond(self, inst: Instance, query: int, pairs: PairSet) -> int:
        responses = sorted(inst.valid_responses(query, self.target))
        if len(responses) == 1:
            return responses[0]
        return self.random.choice(responses)

    def __str__(self) -> str:
        return 'random(h%d, seed=%d)' % (self.target, self.seed)


def adversarial_oracle(inst: Instance, target: int) -> AdversarialOracle:
    return AdversarialOracle(_check_target(inst, target))


def table_oracle(table: Mapping[int, int]) -> TableOracle:
    return TableOracle(table)


def random_consistent_oracle(
    inst: Instance, target: int, seed: int
) -> RandomConsistentOracle:
    return RandomConsistentOracle(_check_target(inst, target), seed)


def load_response_table(path: str) -> Dict[int, int]:
    """Read a JSON object (or list) mapping question ids to responses."""
    with open(path) as fp:
        document = json.load(fp)
    if isinstance(document, list):
        return {q: int(r) for q, r in enumerate(document)}
    if isinstance(document, dict):
        return {int(q): int(r) for q, r in document.items()}
    raise ParameterError('%s: expected a JSON object or list' % path)


def make_oracle(
    spec: str,
    inst: Instance,
    target: Optional[int] = None,
    seed: int = 0,
) -> Oracle:
    """
    Build an oracle from its CLI name: ``adversarial``, ``random`` or
    ``random:<seed>``, ``table:<file>``.
    """
    name, _, argument = spec.partition(':')
    if name == constants.ORACLE_TABLE:
        if not argument:
            raise ParameterError('table oracle needs a file: table:<file>')
        return table_oracle(load_response_table(argument))

    if target is None:
        target = 0
    if name == constants.ORACLE_ADVERSARIAL and not argument:
        return adversarial_oracle(inst, target)
    if name == constants.ORACLE_RANDOM:
        if argument:
            try:
                seed = int(argument)
            except ValueError:
                raise ParameterError('bad oracle seed %r' % argument)
        return random_consistent_oracle(inst, target, seed)
    raise ParameterError('unknown oracle %r' % spec)
