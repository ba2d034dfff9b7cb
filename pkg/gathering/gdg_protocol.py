'''
The GDG robot state machine: predicates, state-changing functions and the
ordered guarded rules. Everything here is a pure function of a View captured
during the Look phase.
'''
from dataclasses import replace
from typing import Callable
from typing import Dict
from typing import Optional
from typing import Tuple

from models.robot import Direction
from models.robot import EdgeRound
from models.robot import MIN_STATES
from models.robot import NOT_WALKER_STATES
from models.robot import RIGHT_MOVING_STATES
from models.robot import RobotState
from models.robot import RobotVars
from models.robot import RuleId
from models.robot import SEARCHER_STATES
from models.robot import View
from models.robot import WAITING_STATES
from models.robot import WALKER_STATES
from resources.error_handler import ContractViolationError
from resources.error_handler import ProtocolViolationError
from resources.logger_factory import LoggerFactory

_logger = LoggerFactory('gdg_protocol').get_logger()

MatePredicate = Callable[[View, RobotVars], bool]


# predicates

def min_discovery(view: View) -> bool:
    me = view.robot
    for mate in view.mates:
        if me.state == RobotState.POTENTIAL_MIN and mate.state == RobotState.RIGHTER and me.id < mate.id:
            return True
        if mate.id_min == me.id:
            return True
        if mate.state in (RobotState.DUMB_SEARCHER, RobotState.POTENTIAL_MIN) and me.id < mate.id_potential_min:
            return True
    return me.right_steps == 4 * me.id * view.n


def gathering_predicates(view: View) -> Tuple[bool, bool]:
    count = len(view.mates)
    g_e = count == view.robot_count - 1
    g_ew = count == view.robot_count - 2 and (
        view.robot.state in MIN_STATES or any(mate.state in MIN_STATES for mate in view.mates)
    )
    return g_e, g_ew


def head_walker_without_walker_mate(view: View) -> bool:
    me = view.robot
    return (
        me.state == RobotState.HEAD_WALKER
        and view.exists_edge(Direction.LEFT, EdgeRound.PREVIOUS)
        and not view.has_moved
        and view.mate_ids != me.walker_mate
    )


def left_walker(view: View) -> bool:
    return view.robot.state == RobotState.LEFT_WALKER


def head_or_tail_walker_end_discovery(view: View) -> bool:
    return view.robot.state in WALKER_STATES and view.robot.walk_steps == view.n


def head_or_tail_walker(view: View) -> bool:
    return view.robot.state in WALKER_STATES


def all_but_two_waiting_walker(view: View) -> bool:
    return (
        len(view.mates) == view.robot_count - 3
        and view.robot.state in WAITING_STATES
        and all(mate.state in WAITING_STATES for mate in view.mates)
    )


def waiting_walker(view: View) -> bool:
    return view.robot.state in WAITING_STATES


def all_but_one_righter(view: View) -> bool:
    return (
        len(view.mates) == view.robot_count - 2
        and view.robot.state == RobotState.RIGHTER
        and all(mate.state == RobotState.RIGHTER for mate in view.mates)
    )


def potential_min_or_righter(view: View) -> bool:
    return view.robot.state in RIGHT_MOVING_STATES


def dumb_searcher_min_revelation(view: View) -> bool:
    me = view.robot
    return me.state == RobotState.DUMB_SEARCHER and any(
        mate.state == RobotState.RIGHTER and mate.id > me.id_potential_min for mate in view.mates
    )


def searcher(view: View) -> bool:
    return view.robot.state in SEARCHER_STATES


# predicates over one mate r'

def potential_min_or_searcher_with_min_waiting(view: View, mate: RobotVars) -> bool:
    return (
        view.robot.state in (RobotState.POTENTIAL_MIN, RobotState.DUMB_SEARCHER, RobotState.AWARE_SEARCHER)
        and mate.state == RobotState.MIN_WAITING_WALKER
    )


def righter_with_min_waiting(view: View, mate: RobotVars) -> bool:
    return view.robot.state == RobotState.RIGHTER and mate.state == RobotState.MIN_WAITING_WALKER


def not_walker_with_head_walker(view: View, mate: RobotVars) -> bool:
    return view.robot.state in NOT_WALKER_STATES and mate.state == RobotState.HEAD_WALKER


def not_walker_with_tail_walker(view: View, mate: RobotVars) -> bool:
    return view.robot.state in NOT_WALKER_STATES and mate.state == RobotState.MIN_TAIL_WALKER


def potential_min_with_aware_searcher(view: View, mate: RobotVars) -> bool:
    return view.robot.state == RobotState.POTENTIAL_MIN and mate.state == RobotState.AWARE_SEARCHER


def righter_with_searcher(view: View, mate: RobotVars) -> bool:
    return view.robot.state == RobotState.RIGHTER and mate.state in SEARCHER_STATES


def dumb_searcher_with_aware_searcher(view: View, mate: RobotVars) -> bool:
    return view.robot.state == RobotState.DUMB_SEARCHER and mate.state == RobotState.AWARE_SEARCHER


def _exists_mate(view: View, predicate: MatePredicate) -> bool:
    return any(predicate(view, mate) for mate in view.mates)


def select_witness(view: View, predicate: MatePredicate) -> RobotVars:
    '''
    The satisfying mate with the smallest id.
    '''
    candidates = [mate for mate in view.mates if predicate(view, mate)]
    if not candidates:
        raise ContractViolationError(f'no mate of robot {view.robot.id} satisfies {predicate.__name__}')
    return min(candidates, key=lambda mate: mate.id)


# functions

def stop_moving(me: RobotVars) -> RobotVars:
    return replace(me, dir=Direction.BOT)


def move_left(me: RobotVars) -> RobotVars:
    return replace(me, dir=Direction.LEFT)


def become_left_walker(me: RobotVars) -> RobotVars:
    return replace(me, state=RobotState.LEFT_WALKER, dir=Direction.BOT)


def walk(view: View, me: RobotVars) -> RobotVars:
    mate_ids = view.mate_ids
    head_waits = me.id == me.id_head_walker and me.walker_mate != mate_ids
    tail_waits = me.id != me.id_head_walker and me.id_head_walker in mate_ids
    if head_waits or tail_waits:
        return replace(me, dir=Direction.BOT)
    steps = me.walk_steps + 1 if view.exists_edge(Direction.RIGHT) else me.walk_steps
    return replace(me, dir=Direction.RIGHT, walk_steps=steps)


def initiate_walk(view: View, me: RobotVars) -> RobotVars:
    head = max(view.node_ids)
    if me.id == head:
        state = RobotState.HEAD_WALKER
    elif me.state == RobotState.MIN_WAITING_WALKER:
        state = RobotState.MIN_TAIL_WALKER
    else:
        state = RobotState.TAIL_WALKER
    return replace(me, id_head_walker=head, walker_mate=view.mate_ids, state=state)


def become_waiting_walker(me: RobotVars, witness: RobotVars) -> RobotVars:
    return replace(
        me,
        state=RobotState.WAITING_WALKER,
        id_potential_min=witness.id,
        id_min=witness.id,
        dir=Direction.BOT,
    )


def become_min_waiting_walker(me: RobotVars) -> RobotVars:
    return replace(
        me,
        state=RobotState.MIN_WAITING_WALKER,
        id_potential_min=me.id,
        id_min=me.id,
        dir=Direction.BOT,
    )


def become_aware_searcher(me: RobotVars, witness: RobotVars) -> RobotVars:
    known = witness.id_potential_min if witness.state == RobotState.DUMB_SEARCHER else witness.id_min
    return replace(
        me,
        state=RobotState.AWARE_SEARCHER,
        dir=Direction.RIGHT,
        id_potential_min=known,
        id_min=known,
    )


def become_tail_walker(me: RobotVars, witness: RobotVars) -> RobotVars:
    return replace(
        me,
        state=RobotState.TAIL_WALKER,
        id_potential_min=witness.id_potential_min,
        id_min=witness.id_min,
        id_head_walker=witness.id_head_walker,
        walker_mate=witness.walker_mate,
        walk_steps=witness.walk_steps,
    )


def move_right(view: View, me: RobotVars) -> RobotVars:
    steps = me.right_steps + 1 if view.exists_edge(Direction.RIGHT) else me.right_steps
    return replace(me, dir=Direction.RIGHT, right_steps=steps)


def initiate_search(view: View, me: RobotVars) -> RobotVars:
    # a righter always looks right, so ExistsEdge(dir, current) reads the right edge
    potential_min = min(view.node_ids)
    if me.id == potential_min:
        steps = me.right_steps + 1 if view.exists_edge(Direction.RIGHT) else me.right_steps
        return replace(me, id_potential_min=potential_min, state=RobotState.POTENTIAL_MIN, right_steps=steps)
    return replace(me, id_potential_min=potential_min, state=RobotState.DUMB_SEARCHER)


def search(view: View, me: RobotVars) -> RobotVars:
    if not view.mates:
        return me
    if me.id == max(view.node_ids):
        return replace(me, dir=Direction.LEFT)
    return replace(me, dir=Direction.RIGHT)


def terminate(me: RobotVars) -> RobotVars:
    return replace(me, terminated=True)


# rules

_GUARDS: Dict[RuleId, Callable[[View], bool]] = {
    RuleId.TERM1: lambda view: gathering_predicates(view)[0],
    RuleId.TERM2: lambda view: gathering_predicates(view)[1],
    RuleId.T1: left_walker,
    RuleId.T2: head_walker_without_walker_mate,
    RuleId.T3: head_or_tail_walker_end_discovery,
    RuleId.W1: head_or_tail_walker,
    RuleId.K1: all_but_two_waiting_walker,
    RuleId.K2: waiting_walker,
    RuleId.K3: lambda view: _exists_mate(view, potential_min_or_searcher_with_min_waiting),
    RuleId.K4: lambda view: (
        _exists_mate(view, righter_with_min_waiting) and view.exists_edge(Direction.RIGHT)
    ),
    RuleId.M1: lambda view: potential_min_or_righter(view) and min_discovery(view),
    RuleId.M2: lambda view: (
        _exists_mate(view, not_walker_with_head_walker) and view.exists_edge(Direction.RIGHT)
    ),
    RuleId.M3: lambda view: _exists_mate(view, not_walker_with_head_walker),
    RuleId.M4: lambda view: _exists_mate(view, not_walker_with_tail_walker),
    RuleId.M5: lambda view: _exists_mate(view, potential_min_with_aware_searcher),
    RuleId.M6: all_but_one_righter,
    RuleId.M7: lambda view: _exists_mate(view, righter_with_searcher),
    RuleId.M8: potential_min_or_righter,
    RuleId.M9: dumb_searcher_min_revelation,
    RuleId.M10: lambda view: _exists_mate(view, dumb_searcher_with_aware_searcher),
    RuleId.M11: searcher,
}

_ACTIONS: Dict[RuleId, Callable[[View, RobotVars], RobotVars]] = {
    RuleId.TERM1: lambda view, me: terminate(me),
    RuleId.TERM2: lambda view, me: terminate(me),
    RuleId.T1: lambda view, me: move_left(me),
    RuleId.T2: lambda view, me: become_left_walker(me),
    RuleId.T3: lambda view, me: stop_moving(me),
    RuleId.W1: walk,
    RuleId.K1: initiate_walk,
    RuleId.K2: lambda view, me: stop_moving(me),
    RuleId.K3: lambda view, me: become_waiting_walker(
        me, select_witness(view, potential_min_or_searcher_with_min_waiting)
    ),
    RuleId.K4: lambda view, me: become_aware_searcher(me, select_witness(view, righter_with_min_waiting)),
    RuleId.M1: lambda view, me: become_min_waiting_walker(me),
    RuleId.M2: lambda view, me: become_aware_searcher(me, select_witness(view, not_walker_with_head_walker)),
    RuleId.M3: lambda view, me: stop_moving(
        become_aware_searcher(me, select_witness(view, not_walker_with_head_walker))
    ),
    RuleId.M4: lambda view, me: walk(view, become_tail_walker(me, select_witness(view, not_walker_with_tail_walker))),
    RuleId.M5: lambda view, me: search(
        view, become_aware_searcher(me, select_witness(view, potential_min_with_aware_searcher))
    ),
    RuleId.M6: initiate_search,
    RuleId.M7: lambda view, me: search(view, become_aware_searcher(me, select_witness(view, righter_with_searcher))),
    RuleId.M8: move_right,
    RuleId.M9: lambda view, me: search(view, become_aware_searcher(me, me)),
    RuleId.M10: lambda view, me: search(
        view, become_aware_searcher(me, select_witness(view, dumb_searcher_with_aware_searcher))
    ),
    RuleId.M11: search,
}


def is_enabled(rule: RuleId, view: View) -> bool:
    return _GUARDS[rule](view)


def first_enabled_rule(view: View) -> RuleId:
    if view.robot.terminated:
        raise ContractViolationError(f'robot {view.robot.id} already terminated')
    for rule in RuleId:
        if _GUARDS[rule](view):
            return rule
    _logger.error(f'no enabled rule for robot {view.robot.id} in state {view.robot.state.value}')
    raise ProtocolViolationError(f'no enabled rule for robot {view.robot.id} in state {view.robot.state.value}')


def apply_rule(rule: RuleId, view: View, me: Optional[RobotVars] = None) -> RobotVars:
    me = view.robot if me is None else me
    if me != view.robot:
        raise ContractViolationError(f'vars of robot {me.id} do not match the view of robot {view.robot.id}')
    if not _GUARDS[rule](view):
        raise ContractViolationError(f'rule {rule.value} is not enabled for robot {me.id}')
    return _ACTIONS[rule](view, me)


class GDGAlgorithm:
    '''
    Default algorithm under test: fires the first enabled GDG rule.
    '''
    name = 'gdg'

    def compute(self, view: View) -> Tuple[RobotVars, Optional[str]]:
        rule = first_enabled_rule(view)
        return _ACTIONS[rule](view, view.robot), rule.value
