import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from gathering.gdg_protocol import GDGAlgorithm
from gathering.gdg_protocol import apply_rule
from gathering.gdg_protocol import first_enabled_rule
from gathering.gdg_protocol import gathering_predicates
from gathering.gdg_protocol import is_enabled
from gathering.gdg_protocol import min_discovery
from gathering.gdg_protocol import righter_with_min_waiting
from gathering.gdg_protocol import select_witness
from gathering.gdg_protocol import walk
from models.robot import Direction
from models.robot import EdgeSense
from models.robot import RobotState
from models.robot import RobotVars
from models.robot import RuleId
from models.robot import View
from resources.error_handler import ContractViolationError


def view_of(me, mates=(), n=4, robot_count=4, right=True, left=True, right_prev=True, left_prev=True,
            has_moved=False):
    edges = EdgeSense(right_current=right, left_current=left, right_previous=right_prev, left_previous=left_prev)
    return View(robot=me, mates=tuple(mates), edges=edges, has_moved=has_moved, n=n, robot_count=robot_count)


def righter(robot_id, **fields):
    return RobotVars(robot_id, **fields)


def min_waiting(robot_id):
    return RobotVars(robot_id, state=RobotState.MIN_WAITING_WALKER, dir=Direction.BOT,
                     id_potential_min=robot_id, id_min=robot_id)


def waiting(robot_id, min_id):
    return RobotVars(robot_id, state=RobotState.WAITING_WALKER, dir=Direction.BOT,
                     id_potential_min=min_id, id_min=min_id)


def dumb(robot_id, potential_min, direction=Direction.RIGHT):
    return RobotVars(robot_id, state=RobotState.DUMB_SEARCHER, dir=direction, id_potential_min=potential_min)


def test_rule_priority_follows_declaration_order():
    assert [rule.priority for rule in RuleId] == list(range(len(RuleId)))
    assert RuleId.TERM1.priority < RuleId.K4.priority < RuleId.M1.priority < RuleId.M11.priority


def test_lone_righter_moves_right():
    view = view_of(righter(3, right_steps=5))
    assert first_enabled_rule(view) == RuleId.M8
    after = apply_rule(RuleId.M8, view)
    assert after.dir == Direction.RIGHT
    assert after.right_steps == 6


def test_move_right_counts_only_present_edges():
    after = apply_rule(RuleId.M8, view_of(righter(3, right_steps=5), right=False))
    assert after.right_steps == 5


def test_min_discovery_after_enough_right_steps():
    # 4 * id * n right steps
    assert min_discovery(view_of(righter(1, right_steps=16)))
    assert not min_discovery(view_of(righter(1, right_steps=15)))
    view = view_of(righter(1, right_steps=16))
    assert first_enabled_rule(view) == RuleId.M1
    after = apply_rule(RuleId.M1, view)
    assert after.state == RobotState.MIN_WAITING_WALKER
    assert after.dir == Direction.BOT
    assert after.id_min == 1 and after.id_potential_min == 1


def test_min_discovery_from_dumb_searcher_mate():
    view = view_of(righter(1), mates=[dumb(4, potential_min=2)])
    assert first_enabled_rule(view) == RuleId.M1


def test_term1_needs_every_other_robot():
    view = view_of(righter(1), mates=[righter(2), righter(3), righter(4)])
    assert gathering_predicates(view) == (True, False)
    assert first_enabled_rule(view) == RuleId.TERM1
    assert apply_rule(RuleId.TERM1, view).terminated


def test_term2_needs_a_min_robot():
    without_min = view_of(righter(3), mates=[righter(2), righter(4)])
    assert gathering_predicates(without_min) == (False, False)
    with_min = view_of(waiting(3, 1), mates=[min_waiting(1), righter(4)])
    assert gathering_predicates(with_min) == (False, True)
    assert first_enabled_rule(with_min) == RuleId.TERM2


def test_k4_requires_the_right_edge():
    mates = [min_waiting(1)]
    present = view_of(righter(4), mates=mates)
    assert first_enabled_rule(present) == RuleId.K4
    after = apply_rule(RuleId.K4, present)
    assert after.state == RobotState.AWARE_SEARCHER
    assert after.dir == Direction.RIGHT
    assert after.id_min == 1

    absent = view_of(righter(4, right_steps=7), mates=mates, right=False)
    assert not is_enabled(RuleId.K4, absent)
    assert first_enabled_rule(absent) == RuleId.M8
    assert apply_rule(RuleId.M8, absent).right_steps == 7


def test_k3_makes_searcher_wait_with_the_min():
    view = view_of(dumb(3, potential_min=2), mates=[min_waiting(1)])
    assert first_enabled_rule(view) == RuleId.K3
    after = apply_rule(RuleId.K3, view)
    assert after.state == RobotState.WAITING_WALKER
    assert after.dir == Direction.BOT
    assert after.id_min == 1


def test_waiting_robot_stays():
    view = view_of(min_waiting(1))
    assert first_enabled_rule(view) == RuleId.K2
    assert apply_rule(RuleId.K2, view).dir == Direction.BOT


def test_m6_initiates_search():
    view = view_of(righter(2), mates=[righter(3), righter(4)])
    assert first_enabled_rule(view) == RuleId.M6
    potential_min = apply_rule(RuleId.M6, view)
    assert potential_min.state == RobotState.POTENTIAL_MIN
    assert potential_min.id_potential_min == 2
    assert potential_min.right_steps == 1

    other = view_of(righter(4), mates=[righter(2), righter(3)])
    searcher = apply_rule(RuleId.M6, other)
    assert searcher.state == RobotState.DUMB_SEARCHER
    assert searcher.id_potential_min == 2
    assert searcher.right_steps == 0
    assert searcher.dir == Direction.RIGHT


def test_m6_no_step_counted_without_right_edge():
    view = view_of(righter(2), mates=[righter(3), righter(4)], right=False)
    assert apply_rule(RuleId.M6, view).right_steps == 0


def test_search_largest_goes_left():
    pair = [dumb(3, potential_min=2), dumb(4, potential_min=2)]
    lower = view_of(pair[0], mates=[pair[1]])
    upper = view_of(pair[1], mates=[pair[0]])
    assert first_enabled_rule(lower) == RuleId.M11
    assert apply_rule(RuleId.M11, lower).dir == Direction.RIGHT
    assert apply_rule(RuleId.M11, upper).dir == Direction.LEFT


def test_search_alone_keeps_direction():
    me = dumb(4, potential_min=2, direction=Direction.LEFT)
    assert apply_rule(RuleId.M11, view_of(me)) == me


def test_m9_dumb_searcher_learns_its_potential_min_is_the_min():
    view = view_of(dumb(3, potential_min=2), mates=[righter(5)])
    assert first_enabled_rule(view) == RuleId.M9
    after = apply_rule(RuleId.M9, view)
    assert after.state == RobotState.AWARE_SEARCHER
    assert after.id_min == 2
    assert after.dir == Direction.RIGHT


def test_k1_initiates_walk():
    minimum, other = min_waiting(1), waiting(3, 1)
    view = view_of(minimum, mates=[other])
    assert first_enabled_rule(view) == RuleId.K1
    tail = apply_rule(RuleId.K1, view)
    assert tail.state == RobotState.MIN_TAIL_WALKER
    assert tail.id_head_walker == 3
    assert tail.walker_mate == frozenset({3})
    head = apply_rule(RuleId.K1, view_of(other, mates=[minimum]))
    assert head.state == RobotState.HEAD_WALKER
    assert head.walker_mate == frozenset({1})


def test_walk_waits_for_the_walker_mate():
    head = RobotVars(3, state=RobotState.HEAD_WALKER, id_head_walker=3, walker_mate=frozenset({1}), walk_steps=2)
    tail = RobotVars(1, state=RobotState.MIN_TAIL_WALKER, id_head_walker=3, walker_mate=frozenset({3}),
                     walk_steps=2, id_min=1)
    assert walk(view_of(head), head).dir == Direction.BOT
    moving = walk(view_of(head, mates=[tail]), head)
    assert moving.dir == Direction.RIGHT and moving.walk_steps == 3
    assert walk(view_of(tail, mates=[head]), tail).dir == Direction.BOT
    assert walk(view_of(tail), tail).dir == Direction.RIGHT


def test_walkers_stop_after_a_full_turn():
    head = RobotVars(3, state=RobotState.HEAD_WALKER, id_head_walker=3, walker_mate=frozenset(), walk_steps=4)
    view = view_of(head, left_prev=False)
    assert first_enabled_rule(view) == RuleId.T3
    assert apply_rule(RuleId.T3, view).dir == Direction.BOT


def test_head_walker_left_behind_becomes_left_walker():
    head = RobotVars(3, state=RobotState.HEAD_WALKER, id_head_walker=3, walker_mate=frozenset({1}), walk_steps=1)
    view = view_of(head, left_prev=True, has_moved=False)
    assert first_enabled_rule(view) == RuleId.T2
    left_walker = apply_rule(RuleId.T2, view)
    assert left_walker.state == RobotState.LEFT_WALKER
    assert first_enabled_rule(view_of(left_walker)) == RuleId.T1
    assert apply_rule(RuleId.T1, view_of(left_walker)).dir == Direction.LEFT


def test_m2_and_m3_join_a_head_walker():
    head = RobotVars(3, state=RobotState.HEAD_WALKER, id_head_walker=3, walker_mate=frozenset({1}), id_min=1)
    joined = apply_rule(RuleId.M2, view_of(righter(4), mates=[head]))
    assert joined.state == RobotState.AWARE_SEARCHER and joined.dir == Direction.RIGHT and joined.id_min == 1
    blocked = view_of(righter(4), mates=[head], right=False)
    assert first_enabled_rule(blocked) == RuleId.M3
    assert apply_rule(RuleId.M3, blocked).dir == Direction.BOT


def test_select_witness_takes_smallest_id():
    view = view_of(righter(6), mates=[min_waiting(4), min_waiting(2)], robot_count=6)
    assert select_witness(view, righter_with_min_waiting).id == 2
    with pytest.raises(ContractViolationError):
        select_witness(view_of(righter(6)), righter_with_min_waiting)


def test_apply_rule_contracts():
    view = view_of(righter(3))
    with pytest.raises(ContractViolationError):
        apply_rule(RuleId.K2, view)
    with pytest.raises(ContractViolationError):
        apply_rule(RuleId.M8, view, righter(4))
    with pytest.raises(ContractViolationError):
        first_enabled_rule(view_of(RobotVars(3, terminated=True)))


def test_algorithm_labels_the_fired_rule():
    vars_after, label = GDGAlgorithm().compute(view_of(righter(2)))
    assert label == 'M8'
    assert vars_after.right_steps == 1


def test_view_rejects_itself_as_mate():
    with pytest.raises(ValueError):
        view_of(righter(2), mates=[righter(2)])
    with pytest.raises(ValueError):
        RobotVars(0)


@st.composite
def righter_views(draw):
    robot_count = draw(st.integers(min_value=4, max_value=6))
    n = draw(st.integers(min_value=4, max_value=8))
    ids = draw(st.lists(st.integers(min_value=1, max_value=12), min_size=robot_count, max_size=robot_count,
                        unique=True))
    mates = draw(st.integers(min_value=0, max_value=robot_count - 1))
    me = righter(ids[0], right_steps=draw(st.integers(min_value=0, max_value=4 * 12 * 8)))
    return view_of(me, mates=[righter(robot_id) for robot_id in ids[1:1 + mates]], n=n, robot_count=robot_count,
                   right=draw(st.booleans()), left=draw(st.booleans()), has_moved=draw(st.booleans()))


@settings(max_examples=100, deadline=None)
@given(righter_views())
def test_some_rule_is_enabled_for_every_righter(view):
    rule = first_enabled_rule(view)
    assert rule in (RuleId.TERM1, RuleId.M1, RuleId.M6, RuleId.M8)
    after = apply_rule(rule, view)
    assert after.id == view.robot.id
    assert after.right_steps >= view.robot.right_steps
