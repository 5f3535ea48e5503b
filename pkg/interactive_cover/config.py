from typing import Any, Optional

from . import constants
from .utils import get_int_env


class BruteForceLimits(object):
    """
    Size limits of the exhaustive computations in verify. Every brute-force
    routine raises SizeError instead of starting an enumeration beyond them.
    """

    __slots__ = (
        'max_ground', 'gcc_max_queries', 'gcc_max_responses',
        'adaptive_max_queries', 'max_states', 'nonadaptive_max_queries',
        'max_assignments',
    )

    def __init__(
        self,
        max_ground: int = constants.DEFAULT_MAX_GROUND,
        gcc_max_queries: int = constants.DEFAULT_GCC_MAX_QUERIES,
        gcc_max_responses: int = constants.DEFAULT_GCC_MAX_RESPONSES,
        adaptive_max_queries: int = constants.DEFAULT_ADAPTIVE_MAX_QUERIES,
        max_states: int = constants.DEFAULT_MAX_STATES,
        nonadaptive_max_queries: int = constants.DEFAULT_NONADAPTIVE_MAX_QUERIES,
        max_assignments: int = constants.DEFAULT_MAX_ASSIGNMENTS,
    ) -> None:
        self.max_ground = max_ground
        self.gcc_max_queries = gcc_max_queries
        self.gcc_max_responses = gcc_max_responses
        self.adaptive_max_queries = adaptive_max_queries
        self.max_states = max_states
        self.nonadaptive_max_queries = nonadaptive_max_queries
        self.max_assignments = max_assignments

    @classmethod
    def from_env(cls, environ: Optional[dict] = None) -> 'BruteForceLimits':
        return cls(
            max_ground=get_int_env(
                'ICOVER_MAX_GROUND', constants.DEFAULT_MAX_GROUND, environ),
            gcc_max_queries=get_int_env(
                'ICOVER_GCC_MAX_QUERIES',
                constants.DEFAULT_GCC_MAX_QUERIES, environ),
            gcc_max_responses=get_int_env(
                'ICOVER_GCC_MAX_RESPONSES',
                constants.DEFAULT_GCC_MAX_RESPONSES, environ),
            adaptive_max_queries=get_int_env(
                'ICOVER_ADAPTIVE_MAX_QUERIES',
                constants.DEFAULT_ADAPTIVE_MAX_QUERIES, environ),
            max_states=get_int_env(
                'ICOVER_MAX_STATES', constants.DEFAULT_MAX_STATES, environ),
            nonadaptive_max_queries=get_int_env(
                'ICOVER_NONADAPTIVE_MAX_QUERIES',
                constants.DEFAULT_NONADAPTIVE_MAX_QUERIES, environ),
            max_assignments=get_int_env(
                'ICOVER_MAX_ASSIGNMENTS',
                constants.DEFAULT_MAX_ASSIGNMENTS, environ),
        )

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, self.__class__) and all(
            getattr(self, name) == getattr(other, name)
            for name in self.__slots__
        )

    def __repr__(self) -> str:
        return 'BruteForceLimits(%s)' % ', '.join(
            '%s=%r' % (name, getattr(self, name)) for name in self.__slots__
        )
