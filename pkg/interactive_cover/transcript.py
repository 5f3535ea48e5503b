from fractions import Fraction
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Tuple

from .instance import Pair, PairSet
from .utils import fraction_to_pair


class Step(NamedTuple):
    query: int
    response: int
    cost: Fraction


class Transcript(object):
    """
    Ordered question/response steps of one run. A question asked twice is
    charged twice; the PairSet keeps set semantics.
    """

    __slots__ = ('_steps', '_pairs', '_total_cost')

    def __init__(self, steps: Optional[List[Step]] = None) -> None:
        self._steps: List[Step] = []
        self._pairs: PairSet = frozenset()
        self._total_cost = Fraction(0)
        for step in steps or ():
            self.append(step.query, step.response, step.cost)

    def append(self, query: int, response: int, cost: Fraction) -> Step:
        step = Step(query, response, cost)
        self._steps.append(step)
        self._pairs = self._pairs | {(query, response)}
        self._total_cost += cost
        return step

    @property
    def steps(self) -> Tuple[Step, ...]:
        return tuple(self._steps)

    @property
    def pairs(self) -> PairSet:
        return self._pairs

    @property
    def total_cost(self) -> Fraction:
        return self._total_cost

    @property
    def queries(self) -> Tuple[int, ...]:
        return tuple(step.query for step in self._steps)

    def __len__(self) -> int:
        return len(self._steps)

    def __iter__(self) -> Iterator[Pair]:
        return ((step.query, step.response) for step in self._steps)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Transcript) and self._steps == other._steps

    def __repr__(self) -> str:
        return 'Transcript(steps=%d, total_cost=%s)' % (
            len(self._steps), self._total_cost
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'steps': [[step.query, step.response] for step in self._steps],
            'total_cost': fraction_to_pair(self._total_cost),
            'queries': len(self._steps),
        }
