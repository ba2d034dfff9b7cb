'''
Seeded ring generators for every dynamics class, and the online adversary that
keeps two robots apart on an always-connected ring.
'''
from collections import Counter
from typing import Dict
from typing import List
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from config import ConfigClass
from gathering.gdg_protocol import GDGAlgorithm
from gathering.ring_model import edge_towards
from gathering.ring_model import make_ring
from gathering.ring_model import ring_distance
from gathering.ring_model import verify_class
from gathering.sim_engine import RobotAlgorithm
from gathering.sim_engine import initial_configuration
from gathering.sim_engine import step
from models.experiments import ACPolicy
from models.experiments import AdversaryReport
from models.experiments import AlgorithmName
from models.experiments import GeneratorSpec
from models.ring import ClassTag
from models.ring import DynClass
from models.ring import EvolvingRing
from models.ring import MIN_RING_SIZE
from models.ring import Snapshot
from models.robot import Direction
from models.simulation import Configuration
from models.simulation import Trace
from models.simulation import TraceEvent
from models.simulation import TraceHeader
from resources.error_handler import ContractViolationError
from resources.error_handler import InvalidRunConfigError
from resources.error_handler import UnsatisfiableSpecError
from resources.helpers import STREAM_RING
from resources.helpers import make_rng
from resources.logger_factory import LoggerFactory

_logger = LoggerFactory('adversary').get_logger()

# any deterministic per-robot compute function can be put under test
AlgorithmUnderTest = RobotAlgorithm

BLACKOUT_CLASSES = (ClassTag.COT, ClassTag.RE)


# generators

def _all_present(n: int) -> Snapshot:
    return (True,) * n


def _without(n: int, e: int) -> Snapshot:
    return tuple(i != e for i in range(n))


def _random_snapshot(rng: np.random.Generator, n: int, absence: float) -> List[bool]:
    return [bool(draw) for draw in rng.random(n) >= absence]


def _check_spec(spec: GeneratorSpec) -> DynClass:
    try:
        target = spec.target()
    except ValueError as exce:
        raise UnsatisfiableSpecError(str(exce))
    if spec.n < MIN_RING_SIZE:
        raise UnsatisfiableSpecError(f'n={spec.n}, rings need n >= {MIN_RING_SIZE}')
    if spec.blackout < 0:
        raise UnsatisfiableSpecError('blackout must be >= 0')
    if spec.blackout and target.tag not in BLACKOUT_CLASSES:
        raise UnsatisfiableSpecError(f'an all-absent blackout cannot belong to class {target}')
    if spec.missing_edge is not None and not 0 <= spec.missing_edge < spec.n:
        raise UnsatisfiableSpecError(f'edge {spec.missing_edge} outside a ring of size {spec.n}')
    if spec.kill_round is not None and spec.kill_round < 0:
        raise UnsatisfiableSpecError('kill round must be >= 0')
    if spec.cycle_length is not None and spec.cycle_length < 1:
        raise UnsatisfiableSpecError('cycle length must be >= 1')
    if spec.prefix_length is not None and spec.prefix_length < 0:
        raise UnsatisfiableSpecError('prefix length must be >= 0')
    if not 0.0 <= spec.absence < 1.0:
        raise UnsatisfiableSpecError('absence probability must lie in [0, 1)')
    return target


def _static(spec: GeneratorSpec, target: DynClass, rng: np.random.Generator):
    return [], [_all_present(spec.n)]


def _bounded_recurrent(spec: GeneratorSpec, target: DynClass, rng: np.random.Generator):
    # edge e is forced present on rounds t = phase[e] mod delta, so every delta-window holds it
    delta, n = target.delta, spec.n
    periods = max(1, (spec.cycle_length or 2 * delta) // delta)
    prefix_length = ((spec.prefix_length or 0) // delta) * delta
    phases = rng.integers(0, delta, size=n)
    rounds = []
    for t in range(prefix_length + periods * delta):
        drawn = _random_snapshot(rng, n, spec.absence)
        rounds.append([drawn[e] or t % delta == phases[e] for e in range(n)])
    return rounds[:prefix_length], rounds[prefix_length:]


def _recurrent(spec: GeneratorSpec, target: DynClass, rng: np.random.Generator):
    n = spec.n
    prefix_length = spec.prefix_length if spec.prefix_length is not None else int(rng.integers(1, 2 * n + 1))
    prefix = [_random_snapshot(rng, n, spec.absence) for _ in range(prefix_length)]
    if prefix and all(all(snapshot) for snapshot in prefix):
        prefix[int(rng.integers(prefix_length))][int(rng.integers(n))] = False

    length = spec.cycle_length or 2 * n
    cycle = [_random_snapshot(rng, n, spec.absence) for _ in range(length)]
    for e in range(n):
        if not any(snapshot[e] for snapshot in cycle):
            cycle[int(rng.integers(length))][e] = True
    return prefix, cycle


def _single_missing(rng: np.random.Generator, n: int) -> Snapshot:
    # n stands for "no edge missing"
    e = int(rng.integers(n + 1))
    return _all_present(n) if e == n else _without(n, e)


def _always_connected(spec: GeneratorSpec, target: DynClass, rng: np.random.Generator):
    n = spec.n
    prefix = [_single_missing(rng, n) for _ in range(spec.prefix_length or 0)]
    if spec.ac_policy == ACPolicy.ROTATING:
        start = spec.missing_edge if spec.missing_edge is not None else int(rng.integers(n))
        cycle = [_without(n, (start + j) % n) for j in range(n)]
    elif spec.ac_policy == ACPolicy.FIXED:
        edge = spec.missing_edge if spec.missing_edge is not None else int(rng.integers(n))
        cycle = [_without(n, edge)]
    else:
        cycle = [_single_missing(rng, n) for _ in range(spec.cycle_length or 2 * n)]
    return prefix, cycle


def _connected_over_time(spec: GeneratorSpec, target: DynClass, rng: np.random.Generator):
    '''
    One eventual missing edge: present until the kill round, absent forever after.
    '''
    n = spec.n
    missing = spec.missing_edge if spec.missing_edge is not None else int(rng.integers(n))
    kill = spec.kill_round if spec.kill_round is not None else int(rng.integers(0, 4 * n + 1))

    prefix = []
    for _ in range(kill):
        snapshot = _random_snapshot(rng, n, spec.absence)
        snapshot[missing] = True
        prefix.append(snapshot)

    length = spec.cycle_length or n
    cycle = []
    for _ in range(length):
        snapshot = _random_snapshot(rng, n, spec.absence)
        snapshot[missing] = False
        cycle.append(snapshot)
    for e in range(n):
        if e != missing and not any(snapshot[e] for snapshot in cycle):
            cycle[int(rng.integers(length))][e] = True
    return prefix, cycle


_BUILDERS = {
    ClassTag.ST: _static,
    ClassTag.BRE: _bounded_recurrent,
    ClassTag.RE: _recurrent,
    ClassTag.AC: _always_connected,
    ClassTag.COT: _connected_over_time,
}


def generate(spec: GeneratorSpec) -> EvolvingRing:
    target = _check_spec(spec)
    rng = make_rng(spec.seed, STREAM_RING)
    prefix, cycle = _BUILDERS[target.tag](spec, target, rng)
    blackout = [[False] * spec.n for _ in range(spec.blackout)]
    ring = make_ring(spec.n, blackout + list(prefix), cycle)
    if not verify_class(ring, target):
        _logger.error(f'generated ring fails its class {target} (seed={spec.seed})')
        raise ContractViolationError(f'generated ring is not in class {target}')
    _logger.info(
        f'generated class={target} n={spec.n} seed={spec.seed} '
        f'prefix={len(ring.prefix)} cycle={len(ring.cycle)}'
    )
    return ring


# adaptive adversary

class _GrowingSchedule:
    '''
    Snapshots emitted so far plus the one on trial for the current round.
    '''

    def __init__(self):
        self.emitted: List[Snapshot] = []
        self.trial: Optional[Snapshot] = None

    @property
    def prefix(self) -> Tuple[Snapshot, ...]:
        return tuple(self.emitted)

    @property
    def cycle(self) -> Tuple[Snapshot, ...]:
        return (self.trial,)

    def at(self, t: int) -> Snapshot:
        if t < len(self.emitted):
            return self.emitted[t]
        return self.trial


def _edge_between(u: int, v: int, n: int) -> int:
    return u if (u + 1) % n == v else v


class _Fork:
    def __init__(self, ring: EvolvingRing, schedule: _GrowingSchedule, algorithm: RobotAlgorithm, r1: int, r2: int):
        self.ring = ring
        self.schedule = schedule
        self.algorithm = algorithm
        self.r1 = r1
        self.r2 = r2

    def __call__(self, config: Configuration, snapshot: Snapshot) -> Tuple[Configuration, TraceEvent, bool]:
        self.schedule.trial = snapshot
        following, event = step(config, self.ring, self.algorithm)
        return following, event, following.positions[self.r1] != following.positions[self.r2]


def adaptive_ac_adversary(
    alg: Optional[AlgorithmUnderTest],
    n: int,
    robot_count: int,
    ids: Sequence[int],
    placement: Mapping[int, int],
    r1: Optional[int] = None,
    r2: Optional[int] = None,
    horizon: Optional[int] = None,
) -> Tuple[EvolvingRing, Trace, AdversaryReport]:
    '''
    Build, one round at a time, an always-connected ring on which r1 and r2 never share a node.

    Adjacent targets lose the edge between them. At distance two the all-present
    round is tried first; if it would bring them together, the edge the first
    target is about to cross goes, then the second's. Farther apart, every edge
    is present. Each choice is confirmed on a one-round fork, and when none of
    these holds every single-edge removal is tried before giving up.
    '''
    if robot_count != len(ids):
        raise InvalidRunConfigError(f'R={robot_count} but {len(ids)} ids were given')
    config = initial_configuration(n, ids, placement)
    ordered = config.ids
    r1 = ordered[-1] if r1 is None else r1
    r2 = ordered[-2] if r2 is None else r2
    if r1 == r2 or r1 not in config.vars or r2 not in config.vars:
        raise InvalidRunConfigError(f'targets must be two distinct robots of {ordered}, got {r1} and {r2}')
    if config.positions[r1] == config.positions[r2]:
        raise InvalidRunConfigError(f'robots {r1} and {r2} start on the same node')
    horizon = ConfigClass.ADVERSARY_HORIZON if horizon is None else horizon
    if horizon < 1:
        raise InvalidRunConfigError(f'horizon must be >= 1, got {horizon}')

    algorithm = alg or GDGAlgorithm()
    schedule = _GrowingSchedule()
    ring = EvolvingRing(n, schedule)
    fork = _Fork(ring, schedule, algorithm, r1, r2)
    trace = Trace(TraceHeader(n, len(ordered), tuple(ordered), horizon, ClassTag.AC.value, None))
    cases: Dict[str, int] = Counter()
    fallbacks = 0
    defeated_round = None
    min_distance = ring_distance(config.positions[r1], config.positions[r2], n)
    full = _all_present(n)

    for t in range(horizon):
        u, v = config.positions[r1], config.positions[r2]
        distance = ring_distance(u, v, n)
        tried = []
        chosen = None

        if distance == 1:
            case = 'adjacent'
            tried.append(_without(n, _edge_between(u, v, n)))
        elif distance == 2:
            case = 'distance_two'
            lookahead = fork(config, full)
            tried.append(full)
            if lookahead[2]:
                chosen = (full, lookahead)
            else:
                for robot, node in ((r1, u), (r2, v)):
                    direction = lookahead[0].vars[robot].dir
                    if direction != Direction.BOT:
                        tried.append(_without(n, edge_towards(node, direction, n)))
        else:
            case = 'far'
            tried.append(full)
        cases[case] += 1
        _logger.debug(f'round {t}: r1 at {u}, r2 at {v}, distance {distance}, case {case}')

        if chosen is None:
            for snapshot in tried:
                if distance == 2 and snapshot == full:
                    continue
                result = fork(config, snapshot)
                if result[2]:
                    chosen = (snapshot, result)
                    break

        if chosen is None:
            fallbacks += 1
            _logger.debug(f'round {t}: planned snapshots fail, trying every single-edge removal')
            for snapshot in [full] + [_without(n, e) for e in range(n)]:
                if snapshot in tried:
                    continue
                result = fork(config, snapshot)
                if result[2]:
                    chosen = (snapshot, result)
                    break

        if chosen is None:
            defeated_round = t
            _logger.error(f'adversary defeated: robots {r1} and {r2} meet at round {t}')
            snapshot, (config, event, _) = full, fork(config, full)
            schedule.emitted.append(snapshot)
            trace.events.append(event)
            min_distance = 0
            break

        snapshot, (config, event, _) = chosen
        schedule.emitted.append(snapshot)
        trace.events.append(event)
        min_distance = min(min_distance, ring_distance(config.positions[r1], config.positions[r2], n))

    emitted = make_ring(n, schedule.emitted, [schedule.emitted[-1]])
    ac_verified = verify_class(emitted, DynClass(ClassTag.AC))
    report = AdversaryReport(
        n=n,
        ids=ordered,
        r1=r1,
        r2=r2,
        algorithm=AlgorithmName(getattr(algorithm, 'name', AlgorithmName.GDG.value)),
        rounds=len(trace.events),
        never_colocated=defeated_round is None,
        defeated_round=defeated_round,
        min_distance=min_distance,
        ac_verified=ac_verified,
        absent_rounds=sum(1 for snapshot in schedule.emitted if not all(snapshot)),
        cases=dict(cases),
        fallbacks=fallbacks,
    )
    _logger.info(
        f'adversary n={n} targets=({r1},{r2}) rounds={report.rounds} '
        f'never_colocated={report.never_colocated} fallbacks={fallbacks}'
    )
    return emitted, trace, report

