import argparse
import asyncio
import io
import json
import logging
import os
import sys
from typing import Any, Dict, Optional, Sequence, Tuple

import networkx as nx

from . import constants
from .codecs import HypothesisClassCodec, InstanceCodec
from .config import BruteForceLimits
from .errors import (
    InconsistentOracleError, InfeasibleInstanceError, InteractiveCoverError,
    NonTerminationError, ParameterError,
)
from .experiment import build_class, parse_class_spec, run_experiment
from .instance import Instance, validate_instance, version_space
from .instgen import generate
from .netapp import gen_community_graph, read_edge_list
from .oracles import make_oracle
from .policies import make_policy
from .reporter import LoggingReporter
from .runner import run_policy
from .utils import derive_seed, fraction_to_pair
from .verify import audit_bounds
from .version import __version__


default_logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

DEFAULT_EXPERIMENT_POLICIES = (
    constants.POLICY_GREEDY,
    constants.POLICY_LEARN_THEN_COVER,
    constants.POLICY_COVER_ALL,
)

# Errors that mean the run itself failed rather than bad input
FAILURES = (
    InfeasibleInstanceError, NonTerminationError, InconsistentOracleError,
)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore
        self.print_usage(sys.stderr)
        raise ParameterError(message)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == '-':
        sys.stdout.write(text)
        return
    with open(out, 'w') as fp:
        fp.write(text)


def _to_json(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + '\n'


def _load_instance(path: str) -> Instance:
    inst = InstanceCodec().load(path)
    problems = validate_instance(inst)
    if problems:
        raise ParameterError(
            '%s is not a valid instance: %s' % (path, '; '.join(problems))
        )
    return inst


def _load_graph(source: str) -> nx.Graph:
    """An edge-list file, or ``sbm[:n1,n2,...[:p_in[:p_out]]]``"""
    name, *args = source.split(':')
    if name != 'sbm':
        return read_edge_list(source)
    params: Dict[str, Any] = {}
    try:
        if args:
            params['sizes'] = [int(size) for size in args[0].split(',')]
        if len(args) > 1:
            params['p_in'] = float(args[1])
        if len(args) > 2:
            params['p_out'] = float(args[2])
    except ValueError:
        raise ParameterError('bad community graph %r' % source)
    return gen_community_graph(**params)


def _dataset_name(source: str) -> str:
    if source.startswith('sbm'):
        return source
    return os.path.splitext(os.path.basename(source))[0]


def _parse_param(text: str) -> Tuple[str, Any]:
    key, sep, value = text.partition('=')
    if not sep or not key:
        raise ParameterError('expected key=value, got %r' % text)
    try:
        return key, int(value)
    except ValueError:
        return key, value


def cmd_solve(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    policy = make_policy(args.policy, inst)
    oracle = make_oracle(args.oracle, inst, args.target, args.seed)
    reporter = LoggingReporter()
    try:
        transcript = run_policy(
            inst, policy, oracle, step_limit=args.step_limit, reporter=reporter
        )
    finally:
        asyncio.run(reporter.close())

    document = {
        'policy': str(policy),
        'oracle': str(oracle),
        'transcript': transcript.to_dict(),
        'total_cost': fraction_to_pair(transcript.total_cost),
        'version_space': sorted(version_space(inst, transcript.pairs)),
    }
    if inst.labels is not None:
        document['labels'] = [inst.label(q) for q in transcript.queries]
    _emit(_to_json(document), args.out)
    return constants.EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    policies = args.policy or list(DEFAULT_EXPERIMENT_POLICIES)
    result = asyncio.run(run_experiment(
        graph, args.class_spec, policies, args.trials, args.seed,
        dataset=args.dataset or _dataset_name(args.graph),
        step_limit=args.step_limit,
    ))
    buffer = io.StringIO()
    result.write_csv(buffer)
    _emit(buffer.getvalue(), args.out)
    return constants.EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = InstanceCodec().load(args.instance)
    limits = BruteForceLimits.from_env()
    problems = validate_instance(inst, exhaustive=args.exhaustive, limits=limits)
    if problems:
        raise ParameterError(
            '%s is not a valid instance: %s'
            % (args.instance, '; '.join(problems))
        )
    report = audit_bounds(inst, limits)
    _emit(_to_json(report.to_dict()), args.out)
    if not report.passed:
        for violation in report.violations:
            default_logger.error('Verification failed: %s', violation)
        return constants.EXIT_FAILURE
    return constants.EXIT_OK


def cmd_gen_instance(args: argparse.Namespace) -> int:
    params = dict(_parse_param(text) for text in args.param)
    inst = generate(args.name, **params)
    _emit(InstanceCodec().dumps(inst) + '\n', args.out)
    return constants.EXIT_OK


def cmd_gen_class(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    spec = parse_class_spec(args.class_spec)
    hc = build_class(graph, spec, derive_seed(args.seed, 'class'))
    _emit(HypothesisClassCodec().dumps(hc) + '\n', args.out)
    return constants.EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog='interactive-cover',
        description='Interactive submodular set cover toolkit',
    )
    parser.add_argument(
        '--version', action='version', version='%(prog)s ' + __version__
    )
    parser.add_argument(
        '--log-level', default='WARNING',
        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'),
    )
    commands = parser.add_subparsers(dest='command', parser_class=_ArgumentParser)
    commands.required = True

    solve = commands.add_parser('solve', help='run one policy on an instance')
    solve.add_argument('instance', help='instance JSON file')
    solve.add_argument(
        '--policy', default=constants.POLICY_GREEDY,
        choices=constants.POLICY_NAMES,
    )
    solve.add_argument(
        '--oracle', default=constants.ORACLE_ADVERSARIAL,
        help='adversarial, random[:<seed>] or table:<file>',
    )
    solve.add_argument('--target', type=int, default=None,
                       help='hidden hypothesis id (default 0)')
    solve.add_argument('--seed', type=int, default=0)
    solve.add_argument('--step-limit', type=int,
                       default=constants.DEFAULT_STEP_LIMIT)
    solve.add_argument('--out', default=None)
    solve.set_defaults(handler=cmd_solve)

    experiment = commands.add_parser(
        'experiment', help='average query counts over random trials',
    )
    experiment.add_argument(
        'graph', help='edge-list file or sbm[:n1,n2,...[:p_in[:p_out]]]',
    )
    experiment.add_argument('--class', dest='class_spec',
                            default='clusters', help='hypothesis class spec')
    experiment.add_argument('--policy', action='append',
                            choices=constants.POLICY_NAMES)
    experiment.add_argument('--trials', type=int, default=100)
    experiment.add_argument('--seed', type=int, default=0)
    experiment.add_argument('--dataset', default=None)
    experiment.add_argument('--step-limit', type=int,
                            default=constants.DEFAULT_STEP_LIMIT)
    experiment.add_argument('--out', default=None)
    experiment.set_defaults(handler=cmd_experiment)

    verify = commands.add_parser(
        'verify', help='audit greedy against the exact optimal costs',
    )
    verify.add_argument('instance', help='instance JSON file')
    verify.add_argument('--exhaustive', action='store_true',
                        help='also check every objective for submodularity')
    verify.add_argument('--out', default=None)
    verify.set_defaults(handler=cmd_verify)

    gen_instance = commands.add_parser(
        'gen-instance', help='write a named construction as instance JSON',
    )
    gen_instance.add_argument('name')
    gen_instance.add_argument('-p', '--param', action='append', default=[],
                              help='generator parameter as key=value')
    gen_instance.add_argument('-o', '--out', default=None)
    gen_instance.set_defaults(handler=cmd_gen_instance)

    gen_class = commands.add_parser(
        'gen-class', help='write a hypothesis class as JSON',
    )
    gen_class.add_argument('graph')
    gen_class.add_argument('--class', dest='class_spec', default='clusters')
    gen_class.add_argument('--seed', type=int, default=0)
    gen_class.add_argument('-o', '--out', default=None)
    gen_class.set_defaults(handler=cmd_gen_class)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ParameterError as e:
        sys.stderr.write('interactive-cover: %s\n' % e)
        return constants.EXIT_USAGE

    logging.basicConfig(level=args.log_level, format=LOG_FORMAT)

    try:
        return args.handler(args)
    except FAILURES as e:
        default_logger.error('%s: %s', args.command, e)
        return constants.EXIT_FAILURE
    except (InteractiveCoverError, OSError) as e:
        default_logger.error('%s: %s', args.command, e)
        return constants.EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
