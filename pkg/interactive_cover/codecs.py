import json
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence

import networkx as nx

from .errors import InstanceFormatError
from .instance import Instance, ResponseTable
from .netapp import DominatingSetObjective, DominationIndex, HypothesisClass
from .objectives import (
    ApproxLearningObjective, ApproxLearningParams, CoverageObjective,
    ElimCountObjective, MaxCoverageObjective, ModularObjective, Objective,
    SumObjective, TruncatedObjective,
)
from .utils import as_fraction, fraction_to_pair


class BaseCodec(ABC):
    @abstractmethod
    def encode(self, value: Any) -> Any:
        pass

    @abstractmethod
    def decode(self, document: Any) -> Any:
        pass

    def dumps(self, value: Any) -> str:
        return json.dumps(self.encode(value), sort_keys=True)

    def loads(self, text: str) -> Any:
        try:
            document = json.loads(text)
        except ValueError as e:
            raise InstanceFormatError('invalid JSON: %s' % e)
        return self.decode(document)

    def dump(self, value: Any, path: str) -> None:
        with open(path, 'w') as fp:
            fp.write(self.dumps(value))
            fp.write('\n')

    def load(self, path: str) -> Any:
        with open(path) as fp:
            return self.loads(fp.read())


def _weights_to_json(weights: Dict) -> List[List[int]]:
    return [[q, r, w] for (q, r), w in sorted(weights.items())]


def _weights_from_json(rows: Sequence[Sequence[int]]) -> Dict:
    return {(int(q), int(r)): w for q, r, w in rows}


class ObjectiveCodec(BaseCodec):
    """
    Tagged-union JSON for single objectives. Objectives that look at the
    version space (elimination count, approximate learning) need the
    response table to decode.
    """

    def __init__(self, table: Optional[ResponseTable] = None) -> None:
        self.table = table

    def encode(self, value: Objective) -> Dict[str, Any]:
        if isinstance(value, ModularObjective):
            return {
                'type': 'modular_table',
                'weights': _weights_to_json(value.weights),
            }
        if isinstance(value, MaxCoverageObjective):
            return {
                'type': 'max_coverage',
                'weights': _weights_to_json(value.weights),
            }
        if isinstance(value, CoverageObjective):
            return self._encode_coverage(value)
        if isinstance(value, TruncatedObjective):
            return {
                'type': 'truncated',
                'cap': value.cap,
                'objective': self.encode(value.objective),
            }
        if isinstance(value, SumObjective):
            return {
                'type': 'sum',
                'objectives': [self.encode(f) for f in value.objectives],
            }
        if isinstance(value, ElimCountObjective):
            return {'type': 'elim_count'}
        if isinstance(value, ApproxLearningObjective):
            document = _encode_params(value.params)
            document['target'] = value.target
            return document
        raise InstanceFormatError('can not encode objective %s' % value)

    @staticmethod
    def _encode_coverage(value: CoverageObjective) -> Dict[str, Any]:
        items = sorted(value.items)
        if value.cover and all(r == 0 for _, r in value.cover):
            n_sets = max(q for q, _ in value.cover) + 1
            sets: List[List[Any]] = [[] for _ in range(n_sets)]
            for (q, _), covered in value.cover.items():
                sets[q] = sorted(covered)
            return {'type': 'set_cover', 'sets': sets, 'items': items}
        return {
            'type': 'coverage',
            'cover': [
                [q, r, sorted(covered)]
                for (q, r), covered in sorted(value.cover.items())
            ],
            'items': items,
        }

    def decode(self, document: Any) -> Objective:
        try:
            kind = document['type']
            if kind == 'modular_table':
                return ModularObjective(_weights_from_json(document['weights']))
            if kind == 'max_coverage':
                return MaxCoverageObjective(
                    _weights_from_json(document['weights'])
                )
            if kind == 'set_cover':
                return CoverageObjective(
                    {(q, 0): covered
                     for q, covered in enumerate(document['sets'])},
                    document.get('items'),
                )
            if kind == 'coverage':
                return CoverageObjective(
                    {(int(q), int(r)): covered
                     for q, r, covered in document['cover']},
                    document.get('items'),
                )
            if kind == 'truncated':
                return TruncatedObjective(
                    self.decode(document['objective']), document['cap']
                )
            if kind == 'sum':
                return SumObjective(
                    [self.decode(f) for f in document['objectives']]
                )
            if kind == 'elim_count':
                return ElimCountObjective(self._require_table())
            if kind == 'approx_learning':
                return ApproxLearningObjective(
                    self._require_table(), _decode_params(document),
                    document['target'],
                )
        except (KeyError, TypeError, ValueError) as e:
            raise InstanceFormatError('bad objective %r: %s' % (document, e))
        raise InstanceFormatError('unknown objective type %r' % (kind,))

    def _require_table(self) -> ResponseTable:
        if self.table is None:
            raise InstanceFormatError('objective needs the response table')
        return self.table


def _encode_params(params: ApproxLearningParams) -> Dict[str, Any]:
    return {
        'type': 'approx_learning',
        'points': params.n_points,
        'predictions': [list(row) for row in params.predictions],
        'kappa': params.kappa,
    }


def _decode_params(document: Dict[str, Any]) -> ApproxLearningParams:
    return ApproxLearningParams(
        document['points'], document['predictions'], document['kappa']
    )


class InstanceCodec(BaseCodec):
    """
    Instance JSON: ``hypotheses``, ``queries`` ({id, cost: [num, den]}),
    ``responses``, ``valid`` ([q, h, [r...]]), ``alpha``, ``objective`` and
    optional ``labels``. Class-wide objective families (elim_count,
    approx_learning, dominating_set) are written compactly, everything else
    as ``per_hypothesis``.
    """

    def encode(self, value: Instance) -> Dict[str, Any]:
        table = value.table
        document: Dict[str, Any] = {
            'hypotheses': value.n_hypotheses,
            'queries': [
                {'id': q, 'cost': fraction_to_pair(cost)}
                for q, cost in enumerate(value.costs)
            ],
            'responses': value.n_responses,
            'valid': [
                [q, h, sorted(table.valid_responses(q, h))]
                for q in value.queries for h in value.hypotheses
            ],
            'alpha': value.alpha,
            'objective': self._encode_objectives(value),
        }
        if value.labels is not None:
            document['labels'] = list(value.labels)
        return document

    def _encode_objectives(self, value: Instance) -> Dict[str, Any]:
        objectives = value.objectives
        first = objectives[0] if objectives else None

        if isinstance(first, ElimCountObjective) and all(
            isinstance(f, ElimCountObjective) for f in objectives
        ):
            return {'type': 'elim_count'}

        if isinstance(first, ApproxLearningObjective) and all(
            isinstance(f, ApproxLearningObjective) and f.target == h
            and f.params is first.params
            for h, f in enumerate(objectives)
        ):
            return _encode_params(first.params)

        if isinstance(first, DominatingSetObjective) and all(
            isinstance(f, DominatingSetObjective) and f.index is first.index
            for f in objectives
        ):
            index = first.index
            return {
                'type': 'dominating_set',
                'nodes': index.node_count,
                'edges': sorted(
                    sorted(edge) for edge in index.graph.edges()
                ),
                'groups': [sorted(f.group) for f in objectives],
                'query_nodes': list(index.query_nodes),
            }

        codec = ObjectiveCodec(value.table)
        return {
            'type': 'per_hypothesis',
            'objectives': [codec.encode(f) for f in objectives],
        }

    def decode(self, document: Any) -> Instance:
        try:
            n_hypotheses = int(document['hypotheses'])
            n_responses = int(document['responses'])
            queries = sorted(document['queries'], key=lambda q: q['id'])
            if [q['id'] for q in queries] != list(range(len(queries))):
                raise InstanceFormatError('query ids must be 0..|Q|-1')
            costs = [as_fraction(q['cost']) for q in queries]
            valid = {
                (int(q), int(h)): [int(r) for r in responses]
                for q, h, responses in document['valid']
            }
            alpha = document['alpha']
            labels = document.get('labels')
            table = ResponseTable(n_hypotheses, len(queries), n_responses, valid)
            objectives = self._decode_objectives(
                document['objective'], table, n_hypotheses
            )
        except InstanceFormatError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InstanceFormatError('bad instance document: %r' % (e,))
        return Instance(table, costs, objectives, alpha, labels)

    def _decode_objectives(
        self, document: Dict[str, Any], table: ResponseTable, n_hypotheses: int
    ) -> List[Objective]:
        kind = document['type']
        if kind == 'elim_count':
            objective = ElimCountObjective(table)
            return [objective] * n_hypotheses
        if kind == 'approx_learning':
            params = _decode_params(document)
            return [
                ApproxLearningObjective(table, params, h)
                for h in range(n_hypotheses)
            ]
        if kind == 'dominating_set':
            graph = nx.Graph()
            graph.add_nodes_from(range(int(document['nodes'])))
            graph.add_edges_from(
                (int(u), int(v)) for u, v in document['edges'] if u != v
            )
            index = DominationIndex(graph, document.get('query_nodes'))
            groups = document['groups']
            if len(groups) != n_hypotheses:
                raise InstanceFormatError(
                    'expected %d groups, got %d' % (n_hypotheses, len(groups))
                )
            return [DominatingSetObjective(index, group) for group in groups]
        if kind == 'per_hypothesis':
            codec = ObjectiveCodec(table)
            objectives = [codec.decode(f) for f in document['objectives']]
            if len(objectives) != n_hypotheses:
                raise InstanceFormatError(
                    'expected %d objectives, got %d'
                    % (n_hypotheses, len(objectives))
                )
            return objectives
        raise InstanceFormatError('unknown objective type %r' % (kind,))


class HypothesisClassCodec(BaseCodec):
    """A hypothesis class as a JSON list of node-id arrays."""

    def encode(self, value: Sequence[Any]) -> List[List[int]]:
        return [sorted(group) for group in value]

    def decode(self, document: Any) -> HypothesisClass:
        if not isinstance(document, list):
            raise InstanceFormatError('hypothesis class must be a JSON list')
        groups = []
        for index, group in enumerate(document):
            if not isinstance(group, list) or not group:
                raise InstanceFormatError(
                    'group %d must be a non-empty list of node ids' % index
                )
            try:
                groups.append(frozenset(int(node) for node in group))
            except (TypeError, ValueError):
                raise InstanceFormatError('group %d has a bad node id' % index)
        return groups
