'''
Verdicts over finished traces: safety, gathering variants, round bounds and
the runtime invariants every GDG execution keeps.
'''
from typing import Dict
from typing import Iterable
from typing import List
from typing import Optional
from typing import Union

from config import ConfigClass
from models.checks import BoundParams
from models.checks import Variant
from models.checks import Verdict
from models.checks import Violation
from models.ring import ClassTag
from models.ring import DynClass
from models.ring import EvolvingRing
from models.robot import Direction
from models.robot import MIN_STATES
from models.robot import RIGHT_MOVING_STATES
from models.robot import RobotState
from models.robot import WAITING_STATES
from models.simulation import TERMINATION_LABELS
from models.simulation import Trace
from resources.error_handler import BoundNotApplicableError
from resources.error_handler import ContractViolationError
from resources.logger_factory import LoggerFactory

_logger = LoggerFactory('checkers').get_logger()


class _NotApplicable:
    def __repr__(self):
        return 'NOT_APPLICABLE'


# pass as the bound of check_variant for classes without a proved round bound
NOT_APPLICABLE = _NotApplicable()

BoundArg = Union[int, _NotApplicable, None]

EXPECTED_VARIANT: Dict[ClassTag, Variant] = {
    ClassTag.COT: Variant.G_EW,
    ClassTag.AC: Variant.G_W,
    ClassTag.RE: Variant.G_E,
    ClassTag.BRE: Variant.G,
    ClassTag.ST: Variant.G,
}

# states that can never be held again once left
NO_RE_ENTRY_STATES = frozenset(RIGHT_MOVING_STATES | WAITING_STATES)


def check_safety(trace: Trace) -> bool:
    '''
    True when every robot that terminated did so on one common node.
    '''
    nodes = {
        record.node_after
        for event in trace.events
        for record in event.records
        if record.rule in TERMINATION_LABELS
    }
    return len(nodes) <= 1


def check_variant(trace: Trace, horizon: Optional[int] = None, bound: BoundArg = None) -> Verdict:
    '''
    Variants reached before the horizon on a safe trace.

    G_EW: at least R-1 robots terminate. G_E: all R terminate.
    G_W: at least R-1 robots terminate by the bound; the last robot may never terminate,
    so the bound is read on those R-1 rounds and not on the latest termination.
    G: all R terminate by the bound.
    '''
    if bound is None:
        raise ContractViolationError('a round bound or NOT_APPLICABLE is required to decide G and G_W')
    horizon = trace.header.horizon if horizon is None else horizon
    robot_count = trace.header.robot_count

    rounds = {
        robot_id: t for robot_id, t in trace.termination_rounds().items() if t is not None and t < horizon
    }
    safe = check_safety(trace)
    last = max(rounds.values()) if rounds else None

    variants = set()
    if safe and len(rounds) >= robot_count - 1:
        variants.add(Variant.G_EW)
    if safe and len(rounds) == robot_count:
        variants.add(Variant.G_E)

    bound_value = None
    bound_ok = None
    if bound is not NOT_APPLICABLE:
        bound_value = int(bound)
        within = sum(1 for t in rounds.values() if t <= bound_value)
        bound_ok = within >= robot_count - 1
        if Variant.G_EW in variants and within >= robot_count - 1:
            variants.add(Variant.G_W)
        if Variant.G_E in variants and within == robot_count:
            variants.add(Variant.G)

    return Verdict(
        safety_ok=safe,
        variants=[variant for variant in Variant if variant in variants],
        termination_round=last,
        terminated=len(rounds),
        bound=bound_value,
        bound_ok=bound_ok,
    )


def bound_for(p: BoundParams) -> int:
    c1, c2, c3 = p.constants()
    n, robots, id_rmin = p.n, p.robot_count, p.id_rmin
    if p.dyn_class == ClassTag.AC:
        return c1 * id_rmin * n * n + c2 * robots * n + c3 * n * n
    if p.dyn_class in (ClassTag.BRE, ClassTag.ST):
        delta = 1 if p.dyn_class == ClassTag.ST else p.delta
        if delta is None:
            raise ContractViolationError('BRE bound needs delta')
        return c1 * n * delta * id_rmin + c2 * n * delta * robots + c3 * n * delta
    raise BoundNotApplicableError(f'no round bound is proved for class {p.dyn_class.value}')


def bound_or_not_applicable(dyn_class: DynClass, n: int, robot_count: int, id_rmin: int) -> BoundArg:
    if dyn_class.tag in (ClassTag.COT, ClassTag.RE):
        return NOT_APPLICABLE
    return bound_for(BoundParams.of(dyn_class, n, robot_count, id_rmin))


def default_horizon(ring: EvolvingRing, robot_count: int, id_rmin: int) -> int:
    '''
    Prefix length plus HORIZON_FACTOR times the BRE bound with delta set to the cycle length.
    '''
    recurrence = bound_for(BoundParams(
        dyn_class=ClassTag.BRE, n=ring.n, robot_count=robot_count, id_rmin=id_rmin, delta=len(ring.cycle)
    ))
    return len(ring.prefix) + ConfigClass.HORIZON_FACTOR * recurrence


def expected_variant(dyn_class: DynClass) -> Variant:
    return EXPECTED_VARIANT[dyn_class.tag]


def monitor_invariants(trace: Trace, ids: Optional[Iterable[int]] = None) -> List[Violation]:
    ids = sorted(trace.header.ids) if ids is None else sorted(ids)
    if set(ids) != set(trace.header.ids):
        raise ContractViolationError(f'ids {ids} differ from the robots of the trace {list(trace.header.ids)}')
    if not ids:
        return []
    rmin = ids[0]
    robot_count = len(ids)

    violations: List[Violation] = []
    previous_state = {robot_id: RobotState.RIGHTER for robot_id in ids}
    left_states = {robot_id: set() for robot_id in ids}
    was_min = {robot_id: False for robot_id in ids}
    turned = {robot_id: False for robot_id in ids}
    right_steps = {robot_id: 0 for robot_id in ids}
    walk_steps = {robot_id: 0 for robot_id in ids}
    tower_before = False
    tower_episodes = 0

    def flag(invariant: str, t: int, robot: Optional[int], detail: str):
        violations.append(Violation(invariant=invariant, round=t, robot=robot, detail=detail))

    for event in trace.events:
        t = event.round
        for record in event.records:
            robot_id, state = record.id, record.state
            if state in MIN_STATES and robot_id != rmin:
                flag('min-identity', t, robot_id, f'robot {robot_id} became {state.value} while {rmin} exists')
            if was_min[robot_id] and state not in MIN_STATES:
                flag('min-closure', t, robot_id, f'robot {robot_id} left min for {state.value}')
            was_min[robot_id] = was_min[robot_id] or state in MIN_STATES

            if state in RIGHT_MOVING_STATES and (turned[robot_id] or record.dir != Direction.RIGHT):
                flag('righter-direction', t, robot_id, f'{state.value} robot {robot_id} did not always look right')
            turned[robot_id] = turned[robot_id] or record.dir != Direction.RIGHT

            if state != previous_state[robot_id]:
                left_states[robot_id].add(previous_state[robot_id])
                if state in NO_RE_ENTRY_STATES and state in left_states[robot_id]:
                    flag('no-re-entry', t, robot_id, f'robot {robot_id} entered {state.value} again')
            previous_state[robot_id] = state

            if record.right_steps < right_steps[robot_id] or record.walk_steps < walk_steps[robot_id]:
                flag('counter-monotonic', t, robot_id, f'a step counter of robot {robot_id} decreased')
            right_steps[robot_id] = record.right_steps
            walk_steps[robot_id] = record.walk_steps

        mins = [record for record in event.records if record.state == RobotState.MIN_WAITING_WALKER]
        for record in event.records:
            if record.state != RobotState.WAITING_WALKER:
                continue
            partners = [m for m in mins if m.node_after == record.node_after]
            if not partners:
                flag('waiting-walkers', t, record.id, f'waitingWalker {record.id} is not with the minWaitingWalker')
            elif record.moved or any(m.moved for m in partners):
                flag('waiting-walkers', t, record.id, f'waitingWalker {record.id} or its minWaitingWalker moved')

        tower = any(
            sum(
                1 for record in event.records
                if record.state == RobotState.WAITING_WALKER and record.node_after == m.node_after
            ) >= robot_count - 3
            for m in mins
        )
        if tower and not tower_before:
            tower_episodes += 1
            if tower_episodes > 1:
                flag('unique-tower-min', t, None, f'towerMin formed for the {tower_episodes}th time')
        tower_before = tower

    if violations:
        _logger.warning(f'{len(violations)} invariant violations, first: {violations[0].invariant}')
    return violations
