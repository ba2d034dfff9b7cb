'''
gdg command line: run, adversary, batch and generate.

Exit status 0 when the verdict holds, 1 when it does not, 2 on usage or input errors.
'''
import argparse
import json
import sys
from typing import List
from typing import Optional

from pydantic import ValidationError

from gathering.ring_model import dump_schedule
from models.experiments import ACPolicy
from models.experiments import AdversaryConfig
from models.experiments import AlgorithmName
from models.experiments import BatchSpec
from models.experiments import GeneratorSpec
from models.experiments import RunConfig
from models.ring import ClassTag
from resources.error_handler import GatheringError
from resources.error_handler import InvalidRunConfigError
from resources.helpers import canonical_json
from resources.helpers import parse_ids
from resources.helpers import parse_placement
from resources.helpers import resolve_seed
from resources.logger_factory import LoggerFactory
from services.experiments import Experiment

_logger = LoggerFactory('cli').get_logger()

EXIT_OK = 0
EXIT_VERDICT_FAILED = 1
EXIT_USAGE = 2

CLASS_CHOICES = [tag.value for tag in ClassTag]


def _robots(args) -> dict:
    ids = parse_ids(args.ids)
    raw = {'ids': ids}
    if args.r is not None:
        raw['R'] = args.r
    if args.placement and args.placement != 'random':
        raw['placement'] = [parse_placement(args.placement, ids)[robot_id] for robot_id in ids]
    return raw


def cmd_run(args) -> int:
    raw = _robots(args)
    raw.update({
        'n': args.n,
        'class': args.dyn_class,
        'delta': args.delta,
        'schedule_path': args.schedule,
        'seed': args.seed,
        'horizon': args.horizon,
        'trace_out': args.trace_out,
        'verdict_out': args.verdict_out,
    })
    result = Experiment.run(RunConfig.parse_obj(raw))
    print(canonical_json(result.dict(exclude={'trace'})))
    if result.expected is not None:
        return EXIT_OK if result.expected_met else EXIT_VERDICT_FAILED
    verdict = result.verdict
    return EXIT_OK if verdict.safety_ok and not verdict.violations else EXIT_VERDICT_FAILED


def cmd_adversary(args) -> int:
    raw = _robots(args)
    raw.update({
        'n': args.n,
        'r1': args.r1,
        'r2': args.r2,
        'horizon': args.horizon,
        'seed': args.seed,
        'algorithm': args.algorithm,
        'trace_out': args.trace_out,
        'schedule_out': args.schedule_out,
    })
    raw.pop('R', None)
    if args.r is not None and args.r != len(raw['ids']):
        raise InvalidRunConfigError(f'R={args.r} but {len(raw["ids"])} ids were given')
    _, _, report = Experiment.adversary(AdversaryConfig.parse_obj(raw))
    print(canonical_json(report.dict(exclude={'schedule', 'trace'})))
    if not report.never_colocated:
        print(f'robots {report.r1} and {report.r2} co-located at round {report.defeated_round}', file=sys.stderr)
        return EXIT_VERDICT_FAILED
    return EXIT_OK


def cmd_batch(args) -> int:
    with open(args.spec_file, 'r') as handle:
        content = handle.read().strip()
    spec = BatchSpec.from_document(json.loads(content) if content else None)
    report = Experiment.batch(spec, args.workers)
    payload = canonical_json(report.dict(exclude={'results': {'__all__': {'trace'}}}))
    if args.report_out:
        with open(args.report_out, 'w') as handle:
            handle.write(payload)
            handle.write('\n')
    print(payload)
    missed = [result for result in report.results if result.expected_met is False]
    return EXIT_VERDICT_FAILED if missed else EXIT_OK


def cmd_generate(args) -> int:
    raw = {
        'class': args.dyn_class,
        'n': args.n,
        'seed': resolve_seed(args.seed),
        'delta': args.delta,
        'missing_edge': args.missing_edge,
        'kill_round': args.kill_round,
        'ac_policy': args.ac_policy,
        'cycle_length': args.cycle_length,
        'prefix_length': args.prefix_length,
        'blackout': args.blackout,
        'absence': args.absence,
    }
    ring = Experiment.generate(GeneratorSpec.parse_obj(raw), args.schedule_out)
    if not args.schedule_out:
        print(dump_schedule(ring))
    return EXIT_OK


def _robot_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--n', type=int, help='ring size')
    parser.add_argument('--r', type=int, help='number of robots, must match --ids')
    parser.add_argument('--ids', required=True, help='comma separated distinct positive ids')
    parser.add_argument('--placement', default='random', help='comma separated start nodes in --ids order, or random')
    parser.add_argument('--seed', type=int, help='defaults to GDG_SEED')
    parser.add_argument('--horizon', type=int)
    parser.add_argument('--trace-out', help='JSON-lines trace file')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='gdg', description='Gathering on dynamic rings: simulate and check GDG.')
    commands = parser.add_subparsers(dest='command', required=True)

    run_parser = commands.add_parser('run', help='simulate one ring and check the expected variant')
    _robot_arguments(run_parser)
    run_parser.add_argument('--class', dest='dyn_class', choices=CLASS_CHOICES)
    run_parser.add_argument('--delta', type=int, help='recurrence bound of bre rings')
    run_parser.add_argument('--schedule', help='schedule file instead of a generated ring')
    run_parser.add_argument('--verdict-out', help='verdict JSON file')
    run_parser.set_defaults(handler=cmd_run)

    adversary_parser = commands.add_parser('adversary', help='keep two robots apart on an always-connected ring')
    _robot_arguments(adversary_parser)
    adversary_parser.add_argument('--r1', type=int, help='defaults to the largest id')
    adversary_parser.add_argument('--r2', type=int, help='defaults to the second largest id')
    adversary_parser.add_argument('--algorithm', choices=[name.value for name in AlgorithmName], default='gdg')
    adversary_parser.add_argument('--schedule-out', help='emitted schedule file')
    adversary_parser.set_defaults(handler=cmd_adversary)

    batch_parser = commands.add_parser('batch', help='run a JSON batch spec and aggregate the verdicts')
    batch_parser.add_argument('spec_file')
    batch_parser.add_argument('--workers', type=int)
    batch_parser.add_argument('--report-out')
    batch_parser.set_defaults(handler=cmd_batch)

    generate_parser = commands.add_parser('generate', help='write a seeded ring of a class to a schedule file')
    generate_parser.add_argument('--class', dest='dyn_class', choices=CLASS_CHOICES, required=True)
    generate_parser.add_argument('--n', type=int, required=True)
    generate_parser.add_argument('--delta', type=int)
    generate_parser.add_argument('--seed', type=int)
    generate_parser.add_argument('--missing-edge', type=int)
    generate_parser.add_argument('--kill-round', type=int)
    generate_parser.add_argument('--ac-policy', choices=[policy.value for policy in ACPolicy], default='rotating')
    generate_parser.add_argument('--cycle-length', type=int)
    generate_parser.add_argument('--prefix-length', type=int)
    generate_parser.add_argument('--blackout', type=int, default=0)
    generate_parser.add_argument('--absence', type=float, default=0.3)
    generate_parser.add_argument('--schedule-out')
    generate_parser.set_defaults(handler=cmd_generate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exce:
        return EXIT_USAGE if exce.code else EXIT_OK
    try:
        return args.handler(args)
    except (GatheringError, ValidationError, ValueError, OSError) as exce:
        _logger.warning(f'{args.command} rejected: {exce}')
        print(f'error: {exce}', file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
