'''
Synchronous Look-Compute-Move rounds on an evolving ring.
'''
import json
from dataclasses import replace
from typing import Dict
from typing import Iterable
from typing import List
from typing import Mapping
from typing import Optional
from typing import Protocol
from typing import Tuple

from gathering.gdg_protocol import GDGAlgorithm
from gathering.ring_model import edge_towards
from gathering.ring_model import left_edge_of
from gathering.ring_model import neighbor
from gathering.ring_model import right_edge_of
from gathering.ring_model import snapshot_at
from models.ring import EvolvingRing
from models.ring import MIN_RING_SIZE
from models.robot import Direction
from models.robot import EdgeSense
from models.robot import RobotVars
from models.robot import View
from models.simulation import Configuration
from models.simulation import RobotRecord
from models.simulation import RunOutcome
from models.simulation import TERMINATED
from models.simulation import Trace
from models.simulation import TraceEvent
from models.simulation import TraceHeader
from resources.error_handler import InvalidRunConfigError
from resources.error_handler import UnknownRobotError
from resources.helpers import canonical_json
from resources.logger_factory import LoggerFactory

_logger = LoggerFactory('sim_engine').get_logger()

MIN_ROBOTS = 4


class RobotAlgorithm(Protocol):
    '''
    Per-robot compute function: new variables (dir included) and a rule label for the trace.
    '''
    name: str

    def compute(self, view: View) -> Tuple[RobotVars, Optional[str]]:
        ...


class IdleAlgorithm:
    '''
    Never moves and never terminates.
    '''
    name = 'idle'

    def compute(self, view: View) -> Tuple[RobotVars, Optional[str]]:
        return replace(view.robot, dir=Direction.BOT), None


def validate_robots(n: int, ids: Iterable[int], placement: Mapping[int, int]) -> List[int]:
    ids = list(ids)
    if n < MIN_RING_SIZE:
        raise InvalidRunConfigError(f'n={n}, rings need n >= {MIN_RING_SIZE}')
    if len(ids) < MIN_ROBOTS:
        raise InvalidRunConfigError(f'R={len(ids)}, at least {MIN_ROBOTS} robots are required')
    if len(set(ids)) != len(ids):
        raise InvalidRunConfigError(f'robot ids must be distinct, got {ids}')
    if any(robot_id <= 0 for robot_id in ids):
        raise InvalidRunConfigError(f'robot ids must be positive, got {ids}')
    if set(placement) != set(ids):
        raise InvalidRunConfigError('placement must give exactly one node per robot id')
    for robot_id, node in placement.items():
        if not 0 <= node < n:
            raise InvalidRunConfigError(f'robot {robot_id} placed on node {node} outside [0, {n})')
    return sorted(ids)


def initial_configuration(n: int, ids: Iterable[int], placement: Mapping[int, int]) -> Configuration:
    ids = validate_robots(n, ids, placement)
    positions = {robot_id: placement[robot_id] for robot_id in ids}
    return Configuration(
        round=0,
        positions=positions,
        vars={robot_id: RobotVars.initial(robot_id) for robot_id in ids},
        prev_positions=dict(positions),
    )


def _edge_sense(ring: EvolvingRing, t: int, node: int) -> EdgeSense:
    right, left = right_edge_of(node, ring.n), left_edge_of(node, ring.n)
    current = snapshot_at(ring, t)
    if t == 0:
        return EdgeSense(right_current=current[right], left_current=current[left])
    previous = snapshot_at(ring, t - 1)
    return EdgeSense(
        right_current=current[right],
        left_current=current[left],
        right_previous=previous[right],
        left_previous=previous[left],
    )


def build_view(config: Configuration, ring: EvolvingRing, robot_id: int) -> View:
    if robot_id not in config.vars:
        raise UnknownRobotError(f'robot {robot_id} is not part of this configuration')
    node = config.positions[robot_id]
    mates = tuple(
        config.vars[other] for other in config.ids if other != robot_id and config.positions[other] == node
    )
    return View(
        robot=config.vars[robot_id],
        mates=mates,
        edges=_edge_sense(ring, config.round, node),
        has_moved=config.round > 0 and node != config.prev_positions[robot_id],
        n=ring.n,
        robot_count=config.robot_count,
    )


def step(config: Configuration, ring: EvolvingRing, algorithm: Optional[RobotAlgorithm] = None):
    '''
    One round: every live robot looks at and computes on the same frozen
    configuration, then all of them move at once.
    '''
    algorithm = algorithm or GDGAlgorithm()
    present = snapshot_at(ring, config.round)

    computed: Dict[int, RobotVars] = {}
    labels: Dict[int, Optional[str]] = {}
    for robot_id in config.ids:
        me = config.vars[robot_id]
        if me.terminated:
            computed[robot_id], labels[robot_id] = me, TERMINATED
            continue
        computed[robot_id], labels[robot_id] = algorithm.compute(build_view(config, ring, robot_id))

    positions: Dict[int, int] = {}
    records = []
    for robot_id in config.ids:
        me, node = computed[robot_id], config.positions[robot_id]
        moved = (
            not me.terminated
            and me.dir != Direction.BOT
            and present[edge_towards(node, me.dir, ring.n)]
        )
        positions[robot_id] = neighbor(node, me.dir, ring.n) if moved else node
        records.append(RobotRecord(
            id=robot_id,
            position=node,
            state=me.state,
            dir=me.dir,
            rule=labels[robot_id],
            moved=moved,
            node_after=positions[robot_id],
            right_steps=me.right_steps,
            walk_steps=me.walk_steps,
        ))

    event = TraceEvent(round=config.round, records=tuple(records), present=present)
    following = Configuration(
        round=config.round + 1,
        positions=positions,
        vars=computed,
        prev_positions=dict(config.positions),
    )
    return following, event


def run(
    ring: EvolvingRing,
    placement: Mapping[int, int],
    ids: Iterable[int],
    horizon: int,
    algorithm: Optional[RobotAlgorithm] = None,
    class_claim: Optional[str] = None,
    seed: Optional[int] = None,
) -> Tuple[Trace, RunOutcome]:
    if horizon < 1:
        raise InvalidRunConfigError(f'horizon must be >= 1, got {horizon}')
    config = initial_configuration(ring.n, ids, placement)
    algorithm = algorithm or GDGAlgorithm()
    _logger.info(f'run start n={ring.n} R={config.robot_count} horizon={horizon} algorithm={algorithm.name}')

    trace = Trace(TraceHeader(ring.n, config.robot_count, tuple(config.ids), horizon, class_claim, seed))
    while config.round < horizon and not all(me.terminated for me in config.vars.values()):
        config, event = step(config, ring, algorithm)
        trace.events.append(event)

    outcome = RunOutcome(
        termination_rounds=trace.termination_rounds(),
        final_positions=dict(config.positions),
        halted_at_horizon=not all(me.terminated for me in config.vars.values()),
        rounds_executed=config.round,
    )
    _logger.info(
        f'run end rounds={outcome.rounds_executed} terminated={outcome.terminated_count}/{config.robot_count}'
    )
    return trace, outcome


# trace file format: header line then one event per line

def trace_lines(trace: Trace) -> List[str]:
    return [canonical_json(trace.header.to_dict())] + [canonical_json(event.to_dict()) for event in trace.events]


def write_trace(trace: Trace, path: str) -> None:
    with open(path, 'w') as handle:
        for line in trace_lines(trace):
            handle.write(line)
            handle.write('\n')


def parse_trace(lines: Iterable[str]) -> Trace:
    lines = [line for line in lines if line.strip()]
    if not lines:
        raise InvalidRunConfigError('trace holds no header line')
    header = TraceHeader.from_dict(json.loads(lines[0]))
    return Trace(header, [TraceEvent.from_dict(json.loads(line)) for line in lines[1:]])


def read_trace(path: str) -> Trace:
    with open(path, 'r') as handle:
        return parse_trace(handle)
