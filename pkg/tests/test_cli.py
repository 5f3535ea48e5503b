import csv
import io
import json

import pytest

from interactive_cover import constants
from interactive_cover.cli import _load_graph, _parse_param, main
from interactive_cover.codecs import InstanceCodec
from interactive_cover.errors import ParameterError
from interactive_cover.instance import Instance, ResponseTable
from interactive_cover.objectives import ModularObjective


@pytest.fixture
def naive_file(tmp_path):
    path = str(tmp_path / 'naive.json')
    assert main([
        'gen-instance', 'naive-greedy-counterexample', '-p', 'alpha=3',
        '-o', path,
    ]) == constants.EXIT_OK
    return path


def run_json(capsys, argv, code=constants.EXIT_OK):
    assert main(argv) == code
    return json.loads(capsys.readouterr().out)


def test_solve(capsys, naive_file):
    document = run_json(capsys, ['solve', naive_file])
    assert document['policy'] == 'greedy'
    assert document['oracle'] == 'adversarial(h0)'
    assert document['transcript']['steps'] == [[0, 0], [1, 0]]
    assert document['total_cost'] == [2, 1]
    assert document['version_space'] == [0, 1]
    assert 'labels' not in document


def test_solve_naive_greedy(capsys, naive_file):
    document = run_json(capsys, [
        'solve', naive_file, '--policy', 'naive-greedy', '--target', '1',
    ])
    assert document['total_cost'] == [30, 1]


def test_solve_table_oracle(capsys, tmp_path, naive_file):
    responses = tmp_path / 'responses.json'
    responses.write_text('[0, 0, 0, 0, 0]')
    document = run_json(capsys, [
        'solve', naive_file, '--oracle', 'table:%s' % responses,
    ])
    assert document['oracle'] == 'table(5 entries)'


def test_solve_labels(capsys, tmp_path):
    path = str(tmp_path / 'cartoon.json')
    assert main(['gen-instance', 'cartoon', '-o', path]) == constants.EXIT_OK
    document = run_json(capsys, [
        'solve', path, '--oracle', 'random:3', '--target', '2',
    ])
    assert document['oracle'] == 'random(h2, seed=3)'
    assert len(document['labels']) == len(document['transcript']['steps'])
    assert set(document['labels']) <= {
        'a1', 'a2', 'a3', 'b1', 'b2', 'b3', 'c1', 'c2', 'c3',
        'd1', 'd2', 'd3', 'v', 'x', 'w',
    }


def test_solve_out_file(tmp_path, naive_file):
    out = tmp_path / 'result.json'
    assert main(['solve', naive_file, '--out', str(out)]) == constants.EXIT_OK
    assert json.loads(out.read_text())['total_cost'] == [2, 1]


def test_solve_step_limit(naive_file):
    assert main([
        'solve', naive_file, '--step-limit', '1',
    ]) == constants.EXIT_FAILURE


def test_solve_infeasible(tmp_path):
    inst = Instance(
        ResponseTable(1, 1, 1, {(0, 0): (0,)}), [1], [ModularObjective({})], 1
    )
    path = str(tmp_path / 'hopeless.json')
    InstanceCodec().dump(inst, path)
    assert main(['solve', path]) == constants.EXIT_FAILURE


def test_verify(capsys, naive_file):
    document = run_json(capsys, ['verify', naive_file, '--exhaustive'])
    assert document['passed'] is True
    assert document['gcc'] == [2, 1]
    assert document['greedy_cost'] == [2, 1]


def test_verify_size_limit(naive_file, monkeypatch):
    monkeypatch.setenv('ICOVER_GCC_MAX_QUERIES', '2')
    assert main(['verify', naive_file]) == constants.EXIT_USAGE


@pytest.mark.parametrize('argv', [
    [],
    ['solve'],
    ['solve', 'missing.json'],
    ['solve', 'x.json', '--policy', 'random-walk'],
    ['gen-instance', 'no-such-instance'],
    ['gen-instance', 'threshold-line', '-p', 'k'],
    ['gen-class', 'sbm:10,x'],
    ['experiment', 'sbm:10,10', '--class', 'bogus'],
])
def test_usage_errors(argv):
    assert main(argv) == constants.EXIT_USAGE


def test_bad_instance_file(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text('{"hypotheses": 1}')
    assert main(['solve', str(path)]) == constants.EXIT_USAGE


def test_gen_class(capsys):
    groups = run_json(capsys, [
        'gen-class', 'sbm:10,10:0.5:0.1', '--class', 'clusters:2',
        '--seed', '1',
    ])
    assert len(groups) == 2
    assert sorted(node for group in groups for node in group) == \
        list(range(20))


def test_experiment(tmp_path):
    out = tmp_path / 'results.csv'
    assert main([
        'experiment', 'sbm:10,10:0.5:0.1', '--class', 'clusters:2,3',
        '--policy', 'greedy', '--policy', 'cover-all', '--trials', '3',
        '--seed', '2', '--out', str(out),
    ]) == constants.EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert [row['policy'] for row in rows] == ['greedy', 'cover-all']
    assert all(row['dataset'] == 'sbm:10,10:0.5:0.1' for row in rows)
    assert all(row['trials'] == '3' for row in rows)


def test_load_graph(tmp_path):
    path = tmp_path / 'edges.txt'
    path.write_text('1 2\n2 3\n')
    assert _load_graph(str(path)).number_of_edges() == 2
    assert _load_graph('sbm:5,5:1:0').number_of_edges() == 20


def test_parse_param():
    assert _parse_param('k=3') == ('k', 3)
    assert _parse_param('sets=1,2;3') == ('sets', '1,2;3')
    with pytest.raises(ParameterError):
        _parse_param('k')


def test_unknown_query_node_file(tmp_path):
    path = str(tmp_path / 'cartoon.json')
    assert main(['gen-instance', 'cartoon', '-o', path]) == constants.EXIT_OK
    with open(path) as fp:
        document = json.load(fp)
    document['objective']['query_nodes'][0] = 99
    with open(path, 'w') as fp:
        json.dump(document, fp)
    assert main(['solve', path]) == constants.EXIT_USAGE
