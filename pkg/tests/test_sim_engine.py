import os
import tempfile
import unittest
from dataclasses import replace

from gathering.adversary import generate
from gathering.checkers import monitor_invariants
from gathering.gdg_protocol import GDGAlgorithm
from gathering.sim_engine import IdleAlgorithm
from gathering.sim_engine import build_view
from gathering.sim_engine import initial_configuration
from gathering.sim_engine import parse_trace
from gathering.sim_engine import read_trace
from gathering.sim_engine import run
from gathering.sim_engine import step
from gathering.sim_engine import trace_lines
from gathering.sim_engine import write_trace
from models.experiments import GeneratorSpec
from models.ring import EvolvingRing
from models.robot import Direction
from models.robot import RobotState
from models.simulation import Configuration
from models.simulation import TERMINATED
from resources.error_handler import InvalidRunConfigError
from resources.error_handler import UnknownRobotError
from resources.helpers import make_rng
from tests.logger import Logger
from tests.prepare_test import ORACLE_IDS
from tests.prepare_test import ORACLE_PLACEMENT
from tests.prepare_test import SetUpTest

R, PM, DS, MW, WW = 'righter', 'potentialMin', 'dumbSearcher', 'minWaitingWalker', 'waitingWalker'
RIGHT, LEFT, BOT = 'right', 'left', 'bot'

# (position, state, dir, rule, moved, node_after, right_steps) of robots 1..4 per round,
# worked out by hand from the rule table on the oracle ring
_DONE = {
    1: (0, MW, BOT, TERMINATED, False, 0, 2),
    2: (0, PM, RIGHT, TERMINATED, False, 0, 4),
    3: (0, WW, BOT, TERMINATED, False, 0, 0),
}
_STUCK = (1, DS, LEFT, 'M11', False, 1, 0)
ORACLE = [
    [(2, R, RIGHT, 'M8', True, 3, 1), (0, PM, RIGHT, 'M6', True, 1, 1),
     (0, DS, RIGHT, 'M6', True, 1, 0), (0, DS, RIGHT, 'M6', True, 1, 0)],
    [(3, R, RIGHT, 'M8', True, 0, 2), (1, PM, RIGHT, 'M8', True, 2, 2),
     (1, DS, RIGHT, 'M11', True, 2, 0), (1, DS, LEFT, 'M11', True, 0, 0)],
    [(0, MW, BOT, 'M1', False, 0, 2), (2, PM, RIGHT, 'M8', False, 2, 2),
     (2, DS, LEFT, 'M11', True, 1, 0), (0, DS, LEFT, 'M11', True, 3, 0)],
    [(0, MW, BOT, 'K2', False, 0, 2), (2, PM, RIGHT, 'M8', True, 3, 3),
     (1, DS, LEFT, 'M11', True, 0, 0), (3, DS, LEFT, 'M11', True, 2, 0)],
    [(0, MW, BOT, 'K2', False, 0, 2), (3, PM, RIGHT, 'M8', True, 0, 4),
     (0, WW, BOT, 'K3', False, 0, 0), (2, DS, LEFT, 'M11', True, 1, 0)],
    [(0, MW, BOT, 'Term2', False, 0, 2), (0, PM, RIGHT, 'Term2', False, 0, 4),
     (0, WW, BOT, 'Term2', False, 0, 0), _STUCK],
] + [
    [_DONE[1], _DONE[2], _DONE[3], _STUCK] for _ in range(6, 13)
] + [
    [_DONE[1], _DONE[2], _DONE[3], (1, DS, LEFT, 'M11', True, 0, 0)],
    [_DONE[1], _DONE[2], _DONE[3], (0, DS, LEFT, 'Term1', False, 0, 0)],
]


class TestSimEngine(unittest.TestCase):
    log = Logger(name='test_sim_engine.log')
    test = SetUpTest(log)

    @classmethod
    def setUpClass(cls):
        cls.log = cls.test.log
        cls.spread = {1: 0, 2: 1, 3: 2, 4: 3}

    def test_01_first_round_on_static_ring(self):
        self.log.section('01', 'test every righter steps right in round 0')
        ring = EvolvingRing.static(4)
        config = initial_configuration(4, [1, 2, 3, 4], self.spread)
        following, event = step(config, ring)
        self.assertEqual(following.round, 1)
        self.assertEqual(following.positions, {1: 1, 2: 2, 3: 3, 4: 0})
        self.assertTrue(all(me.right_steps == 1 for me in following.vars.values()))
        self.assertEqual([record.rule for record in event.records], ['M8'] * 4)

    def test_02_stuck_robot_stays(self):
        self.log.section('02', 'test robot facing an absent edge stays')
        ring = self.test.late_missing_edge_ring()
        config = initial_configuration(4, [1, 2, 3, 4], {1: 0, 2: 3, 3: 1, 4: 2})
        config = replace(config, round=22)
        following, event = step(config, ring)
        record = event.record_of(2)
        self.assertEqual(record.dir, Direction.RIGHT)
        self.assertFalse(record.moved)
        self.assertEqual(following.positions[2], 3)
        self.assertEqual(following.vars[2].right_steps, 0)

    def test_03_all_on_one_node_terminate_at_once(self):
        self.log.section('03', 'test robots starting together fire Term1 in round 0')
        trace, outcome = self.test.run_scenario(EvolvingRing.static(4), {1: 0, 2: 0, 3: 0, 4: 0})
        self.assertEqual(outcome.termination_rounds, {1: 0, 2: 0, 3: 0, 4: 0})
        self.assertEqual(outcome.rounds_executed, 1)
        self.assertFalse(outcome.halted_at_horizon)
        self.assertEqual([record.rule for record in trace.events[0].records], ['Term1'] * 4)

    def test_04_static_ring_scattered(self):
        self.log.section('04', 'test scattered robots on a static ring')
        trace, outcome = self.test.run_scenario(EvolvingRing.static(4), self.spread)
        self.assertEqual(outcome.termination_rounds, {1: 22, 2: 23, 3: 22, 4: 22})
        self.assertEqual(set(outcome.final_positions.values()), {0})
        self.assertEqual(trace.events[16].record_of(1).rule, 'M1')
        self.assertEqual([trace.events[t].record_of(robot).rule for t, robot in ((17, 4), (18, 3), (19, 2))],
                         ['K4'] * 3)
        self.assertEqual(trace.events[21].record_of(4).rule, 'K3')
        self.assertEqual(monitor_invariants(trace), [])

    def test_05_static_ring_n8(self):
        self.log.section('05', 'test static ring n=8 gathers all robots')
        placement = {1: 0, 2: 3, 3: 5, 5: 6}
        trace, outcome = self.test.run_scenario(EvolvingRing.static(8), placement, horizon=500)
        self.assertTrue(all(t is not None for t in outcome.termination_rounds.values()))
        self.assertEqual(len(set(outcome.final_positions.values())), 1)

    def test_06_eventual_missing_edge_leaves_one_behind(self):
        self.log.section('06', 'test late missing edge strands robot 2')
        trace, outcome = self.test.run_scenario(self.test.late_missing_edge_ring(), self.spread, horizon=300)
        self.assertEqual(outcome.termination_rounds, {1: 22, 2: None, 3: 22, 4: 22})
        self.assertTrue(outcome.halted_at_horizon)
        self.assertEqual(outcome.rounds_executed, 300)
        self.assertEqual(outcome.final_positions[2], 3)

    def test_07_oracle_trace(self):
        self.log.section('07', 'test simulator matches the hand-derived 15 round trace')
        trace, outcome = self.test.run_scenario(self.test.oracle_ring(), ORACLE_PLACEMENT, ORACLE_IDS, horizon=100)
        self.assertEqual(len(trace.events), len(ORACLE))
        for event, expected in zip(trace.events, ORACLE):
            observed = [
                (r.position, r.state.value, r.dir.value, r.rule, r.moved, r.node_after, r.right_steps)
                for r in event.records
            ]
            self.assertEqual(observed, expected, f'round {event.round}')
        self.assertEqual(outcome.termination_rounds, {1: 5, 2: 5, 3: 5, 4: 14})
        self.assertEqual(monitor_invariants(trace), [])

    def test_08_terminated_robots_are_frozen(self):
        self.log.section('08', 'test terminated robots never change')
        trace, _ = self.test.run_scenario(self.test.oracle_ring(), ORACLE_PLACEMENT, ORACLE_IDS)
        for robot_id in (1, 2, 3):
            frozen = [event.record_of(robot_id) for event in trace.events[6:]]
            self.assertTrue(all(record == frozen[0] for record in frozen))

    def test_09_moves_follow_present_edges(self):
        self.log.section('09', 'test every move crosses a present edge')
        trace, _ = self.test.run_scenario(self.test.oracle_ring(), ORACLE_PLACEMENT, ORACLE_IDS)
        for event in trace.events:
            for record in event.records:
                if not record.moved:
                    self.assertEqual(record.position, record.node_after)
                    continue
                edge = record.position if record.dir == Direction.RIGHT else (record.position - 1) % 4
                self.assertTrue(event.present[edge])

    def test_10_replay_is_identical(self):
        self.log.section('10', 'test identical inputs give identical traces')
        first, _ = run(self.test.oracle_ring(), ORACLE_PLACEMENT, ORACLE_IDS, 50, seed=3)
        second, _ = run(self.test.oracle_ring(), ORACLE_PLACEMENT, ORACLE_IDS, 50, seed=3)
        self.assertEqual(trace_lines(first), trace_lines(second))

    def test_11_trace_file(self):
        self.log.section('11', 'test trace file header and parsing')
        trace, _ = run(EvolvingRing.static(4), {1: 0, 2: 1, 3: 2, 4: 3}, [1, 2, 3, 4], 40, class_claim='st', seed=9)
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'trace.jsonl')
            write_trace(trace, path)
            with open(path) as handle:
                header = handle.readline()
            self.assertEqual(header.strip(), '{"R":4,"class_claim":"st","horizon":40,"ids":[1,2,3,4],"n":4,"seed":9}')
            loaded = read_trace(path)
        self.assertEqual(loaded.events, trace.events)
        self.assertEqual(loaded.termination_rounds(), trace.termination_rounds())
        with self.assertRaises(InvalidRunConfigError):
            parse_trace([])

    def test_12_invalid_runs(self):
        self.log.section('12', 'test run preconditions')
        ring = EvolvingRing.static(4)
        with self.assertRaises(InvalidRunConfigError):
            run(ring, {1: 0, 2: 1, 3: 2, 4: 3}, [1, 2, 3, 4], 0)
        with self.assertRaises(InvalidRunConfigError):
            run(ring, {1: 0, 2: 1, 3: 2}, [1, 2, 3], 10)
        with self.assertRaises(InvalidRunConfigError):
            run(ring, {1: 0, 2: 1, 3: 2, 4: 7}, [1, 2, 3, 4], 10)
        with self.assertRaises(InvalidRunConfigError):
            run(ring, {1: 0, 2: 1, 3: 2, 4: 3}, [1, 2, 3, 5], 10)
        config = initial_configuration(4, [1, 2, 3, 4], {1: 0, 2: 1, 3: 2, 4: 3})
        with self.assertRaises(UnknownRobotError):
            build_view(config, ring, 9)

    def test_13_idle_algorithm_never_moves(self):
        self.log.section('13', 'test idle robots stay put')
        trace, outcome = run(EvolvingRing.static(4), {1: 0, 2: 1, 3: 2, 4: 3}, [1, 2, 3, 4], 10,
                             algorithm=IdleAlgorithm())
        self.assertEqual(outcome.final_positions, {1: 0, 2: 1, 3: 2, 4: 3})
        self.assertTrue(all(record.state == RobotState.RIGHTER and record.rule is None
                            for event in trace.events for record in event.records))

    def test_14_view_sees_previous_edges(self):
        self.log.section('14', 'test view built from the frozen configuration')
        ring = self.test.oracle_ring()
        config = initial_configuration(4, ORACLE_IDS, ORACLE_PLACEMENT)
        view = build_view(config, ring, 2)
        self.assertEqual(view.mate_ids, frozenset({3, 4}))
        self.assertFalse(view.has_moved)
        self.assertFalse(view.edges.right_previous)
        for _ in range(3):
            config, _ = step(config, ring)
        # round 3 looks back at round 2, where edge 2 was absent
        view = build_view(config, ring, 2)
        self.assertEqual(config.positions[2], 2)
        self.assertFalse(view.edges.right_previous)
        self.assertTrue(view.edges.right_current)
        self.assertFalse(view.has_moved)

    def test_15_round_ignores_robot_order(self):
        self.log.section('15', 'test every robot computes on the same frozen configuration')
        ids = [2, 3, 5, 7]
        ring = generate(GeneratorSpec.parse_obj({'class': 'ac', 'n': 6, 'seed': 4}))
        config = initial_configuration(6, ids, {2: 0, 3: 2, 5: 2, 7: 5})
        algorithm = GDGAlgorithm()
        for t in range(200):
            order = [ids[i] for i in make_rng(t).permutation(len(ids))]
            shuffled = Configuration(
                round=config.round,
                positions={robot_id: config.positions[robot_id] for robot_id in order},
                vars={robot_id: config.vars[robot_id] for robot_id in order},
                prev_positions={robot_id: config.prev_positions[robot_id] for robot_id in reversed(order)},
            )
            one_by_one = {
                robot_id: algorithm.compute(build_view(shuffled, ring, robot_id))[0]
                for robot_id in order if not shuffled.vars[robot_id].terminated
            }
            following, event = step(config, ring)
            shuffled_following, shuffled_event = step(shuffled, ring)
            self.assertEqual(event, shuffled_event)
            self.assertEqual(following.positions, shuffled_following.positions)
            self.assertEqual(following.vars, shuffled_following.vars)
            for robot_id, computed in one_by_one.items():
                self.assertEqual(following.vars[robot_id], computed)
            config = following
            if all(me.terminated for me in config.vars.values()):
                break
        self.log.info(f'stopped after round {config.round}')
