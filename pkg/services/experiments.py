from concurrent.futures import ProcessPoolExecutor
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from pydantic import ValidationError

from config import ConfigClass
from gathering.adversary import adaptive_ac_adversary
from gathering.adversary import generate
from gathering.checkers import NOT_APPLICABLE
from gathering.checkers import bound_or_not_applicable
from gathering.checkers import check_variant
from gathering.checkers import default_horizon
from gathering.checkers import expected_variant
from gathering.checkers import monitor_invariants
from gathering.gdg_protocol import GDGAlgorithm
from gathering.ring_model import classes_of
from gathering.ring_model import load_schedule
from gathering.ring_model import save_schedule
from gathering.ring_model import verify_class
from gathering.sim_engine import IdleAlgorithm
from gathering.sim_engine import run
from gathering.sim_engine import trace_lines
from gathering.sim_engine import write_trace
from models.checks import VARIANT_STRENGTH
from models.checks import Variant
from models.experiments import AdversaryConfig
from models.experiments import AdversaryReport
from models.experiments import AlgorithmName
from models.experiments import BatchEntryError
from models.experiments import BatchReport
from models.experiments import BatchSpec
from models.experiments import GeneratorSpec
from models.experiments import RunConfig
from models.experiments import RunResult
from models.ring import ClassTag
from models.ring import DynClass
from models.ring import EvolvingRing
from models.ring import ScheduleDocument
from models.simulation import Trace
from resources.error_handler import ClassMismatchError
from resources.error_handler import DimensionMismatchError
from resources.error_handler import InvalidRunConfigError
from resources.helpers import STREAM_PLACEMENT
from resources.helpers import canonical_json
from resources.helpers import make_rng
from resources.helpers import random_ids
from resources.helpers import random_placement
from resources.helpers import resolve_seed
from resources.logger_factory import LoggerFactory

_logger = LoggerFactory('experiments').get_logger()

# (subclass, superclass) pairs of the class hierarchy
CLASS_INCLUSIONS = [
    (ClassTag.ST, ClassTag.BRE),
    (ClassTag.BRE, ClassTag.RE),
    (ClassTag.RE, ClassTag.COT),
    (ClassTag.ST, ClassTag.AC),
    (ClassTag.AC, ClassTag.COT),
]


def _implies(stronger: Optional[Variant], weaker: Optional[Variant]) -> bool:
    if weaker is None:
        return True
    if stronger is None:
        return False
    return stronger == weaker or stronger == Variant.G or weaker == Variant.G_EW


def _run_entry(raw: dict) -> dict:
    return Experiment.run(RunConfig.parse_obj(raw)).dict()


class Experiment:
    '''
    Generation, simulation, checking and the adversary, wired together for the CLI and the API.
    '''

    @classmethod
    def parse(cls, model, raw: dict):
        try:
            return model.parse_obj(raw)
        except ValidationError as exce:
            raise InvalidRunConfigError(str(exce))

    @classmethod
    def generate(cls, spec: GeneratorSpec, schedule_out: Optional[str] = None) -> EvolvingRing:
        ring = generate(spec)
        if schedule_out:
            save_schedule(ring, schedule_out)
        return ring

    @classmethod
    def verify(cls, document: ScheduleDocument, delta: Optional[int] = None) -> Dict[str, bool]:
        return classes_of(document.to_ring(), delta)

    @classmethod
    def build_ring(cls, config: RunConfig, seed: int) -> Tuple[EvolvingRing, Optional[DynClass]]:
        target = config.target()
        if config.schedule is not None or config.schedule_path:
            ring = config.schedule.to_ring() if config.schedule is not None else load_schedule(config.schedule_path)
            if config.n is not None and config.n != ring.n:
                raise DimensionMismatchError(f'n={config.n} but the schedule has {ring.n} nodes')
            if target is not None and not verify_class(ring, target):
                _logger.warning(f'schedule claimed as {target} fails the class check')
                raise ClassMismatchError(f'schedule is not in class {target}')
            return ring, target
        if target is None:
            raise InvalidRunConfigError('either a class or a schedule is required')
        if config.n is None:
            raise InvalidRunConfigError('n is required to generate a ring')
        raw = {'class': target.tag.value, 'n': config.n, 'seed': seed, 'delta': target.delta}
        raw.update(config.generator)
        return generate(cls.parse(GeneratorSpec, raw)), target

    @classmethod
    def run(cls, config: RunConfig) -> RunResult:
        seed = resolve_seed(config.seed)
        ring, target = cls.build_ring(config, seed)
        ids = list(config.ids)
        if config.placement is not None:
            placement = dict(zip(ids, config.placement))
        else:
            placement = random_placement(ring.n, ids, seed)

        id_rmin = min(ids)
        bound = bound_or_not_applicable(target, ring.n, len(ids), id_rmin) if target else NOT_APPLICABLE
        horizon = config.horizon
        if horizon is None:
            horizon = default_horizon(ring, len(ids), id_rmin)
            if bound is not NOT_APPLICABLE:
                horizon = max(horizon, bound + 1)

        trace, outcome = run(ring, placement, ids, horizon, class_claim=str(target) if target else None, seed=seed)
        verdict = check_variant(trace, horizon, bound)
        verdict.violations = monitor_invariants(trace, ids)
        expected = expected_variant(target) if target else None

        result = RunResult(
            dyn_class=str(target) if target else None,
            n=ring.n,
            robot_count=len(ids),
            ids=sorted(ids),
            seed=seed,
            horizon=horizon,
            verdict=verdict,
            expected=expected,
            expected_met=verdict.satisfies(expected) if expected else None,
            outcome=outcome.to_dict(),
            classes=classes_of(ring, target.delta if target else None),
        )
        if config.trace_out:
            write_trace(trace, config.trace_out)
        if config.verdict_out:
            with open(config.verdict_out, 'w') as handle:
                handle.write(canonical_json(result.dict()))
                handle.write('\n')
        if config.include_trace:
            result.trace = trace_lines(trace)
        return result

    @classmethod
    def adversary_placement(cls, config: AdversaryConfig, r1: int, r2: int, seed: int) -> Dict[int, int]:
        if config.placement is not None:
            if len(config.placement) != len(config.ids):
                raise InvalidRunConfigError('placement must list one node per id')
            return dict(zip(config.ids, config.placement))
        placement = random_placement(config.n, config.ids, seed)
        if placement[r1] == placement[r2]:
            shift = int(make_rng(seed, STREAM_PLACEMENT).integers(1, config.n))
            placement[r2] = (placement[r1] + shift) % config.n
        return placement

    @classmethod
    def adversary(cls, config: AdversaryConfig) -> Tuple[EvolvingRing, Trace, AdversaryReport]:
        seed = resolve_seed(config.seed)
        ordered = sorted(config.ids)
        if len(ordered) < 2:
            raise InvalidRunConfigError('the adversary needs at least two robots')
        r1 = ordered[-1] if config.r1 is None else config.r1
        r2 = ordered[-2] if config.r2 is None else config.r2
        if r1 not in ordered or r2 not in ordered:
            raise InvalidRunConfigError(f'targets {r1} and {r2} must be among the ids {ordered}')
        placement = cls.adversary_placement(config, r1, r2, seed)
        algorithm = IdleAlgorithm() if config.algorithm == AlgorithmName.IDLE else GDGAlgorithm()
        ring, trace, report = adaptive_ac_adversary(
            algorithm, config.n, len(config.ids), config.ids, placement, r1, r2,
            config.horizon or ConfigClass.ADVERSARY_HORIZON,
        )
        if config.schedule_out:
            save_schedule(ring, config.schedule_out)
        if config.trace_out:
            write_trace(trace, config.trace_out)
        return ring, trace, report

    @classmethod
    def expand(cls, spec: BatchSpec) -> List[dict]:
        entries = list(spec.runs)
        for sweep in spec.sweeps:
            for offset in range(sweep.seeds):
                seed = sweep.seed_start + offset
                ids = sweep.ids or random_ids(sweep.robot_count, sweep.id_upper, seed)
                for tag in sweep.classes:
                    entry = {'class': tag.value, 'n': sweep.n, 'ids': ids, 'seed': seed}
                    if tag == ClassTag.BRE:
                        entry['delta'] = sweep.delta
                    if sweep.horizon is not None:
                        entry['horizon'] = sweep.horizon
                    entries.append(entry)
        return entries

    @classmethod
    def batch(cls, spec: BatchSpec, workers: Optional[int] = None) -> BatchReport:
        entries = cls.expand(spec)
        workers = ConfigClass.BATCH_WORKERS if workers is None else workers
        results: List[Optional[RunResult]] = [None] * len(entries)
        failed: List[BatchEntryError] = []

        def record_failure(index: int, exce: Exception):
            _logger.error(f'batch entry {index} failed: {exce}')
            failed.append(BatchEntryError(index=index, error=str(exce)))

        if workers > 1 and len(entries) > 1:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = [executor.submit(_run_entry, entry) for entry in entries]
                for index, future in enumerate(futures):
                    try:
                        results[index] = RunResult.parse_obj(future.result())
                    except Exception as exce:
                        record_failure(index, exce)
        else:
            for index, entry in enumerate(entries):
                try:
                    results[index] = RunResult.parse_obj(_run_entry(entry))
                except Exception as exce:
                    record_failure(index, exce)

        completed = [result for result in results if result is not None]
        return cls.aggregate(len(entries), completed, failed)

    @classmethod
    def aggregate(cls, total: int, results: List[RunResult], failed: List[BatchEntryError]) -> BatchReport:
        matrix: Dict[str, Dict[str, int]] = {}
        grouped: Dict[str, List[RunResult]] = {}
        expected: Dict[str, Variant] = {}
        for result in results:
            key = result.dyn_class or 'schedule'
            grouped.setdefault(key, []).append(result)
            row = matrix.setdefault(key, {variant.value: 0 for variant in Variant})
            for variant in result.verdict.variants:
                row[variant.value] += 1
            if result.expected is not None:
                expected[key] = result.expected

        strongest: Dict[str, Optional[Variant]] = {}
        for key, runs in grouped.items():
            strongest[key] = next(
                (variant for variant in VARIANT_STRENGTH if all(variant in run.verdict.variants for run in runs)),
                None,
            )

        by_tag = {ClassTag(key.split('(')[0]): value for key, value in strongest.items() if key != 'schedule'}
        consistent = all(
            _implies(by_tag[sub], by_tag[sup]) for sub, sup in CLASS_INCLUSIONS if sub in by_tag and sup in by_tag
        )
        if not consistent:
            _logger.warning('batch matrix is not consistent with the class hierarchy')

        return BatchReport(
            total=total,
            completed=len(results),
            failed=sorted(failed, key=lambda entry: entry.index),
            matrix=matrix,
            runs_per_class={key: len(runs) for key, runs in grouped.items()},
            strongest=strongest,
            expected=expected,
            hierarchy_consistent=consistent,
            results=results,
        )

    @classmethod
    def adversary_payload(cls, config: AdversaryConfig) -> dict:
        ring, trace, report = cls.adversary(config)
        report = report.copy(update={
            'schedule': ScheduleDocument.from_ring(ring),
            'trace': trace_lines(trace) if config.include_trace else None,
        })
        return report.dict()
