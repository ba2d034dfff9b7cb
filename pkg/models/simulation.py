from dataclasses import dataclass
from dataclasses import field
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from models.robot import Direction
from models.robot import RobotState
from models.robot import RobotVars
from models.robot import TERMINATION_RULES

# rule label of a robot that terminated in an earlier round
TERMINATED = 'terminated'
TERMINATION_LABELS = frozenset(rule.value for rule in TERMINATION_RULES)


@dataclass(frozen=True)
class Configuration:
    '''
    Positions and variables of every robot at the start of a round.
    '''
    round: int
    positions: Dict[int, int]
    vars: Dict[int, RobotVars]
    prev_positions: Dict[int, int]

    @property
    def ids(self) -> List[int]:
        return sorted(self.vars)

    @property
    def robot_count(self) -> int:
        return len(self.vars)


@dataclass(frozen=True)
class RobotRecord:
    '''
    One robot in one round: where it looked from, what it computed and where it ended.
    '''
    id: int
    position: int
    state: RobotState
    dir: Direction
    rule: Optional[str]
    moved: bool
    node_after: int
    right_steps: int = 0
    walk_steps: int = 0

    def to_dict(self) -> dict:
        return {
            'id': self.id,
            'position': self.position,
            'state': self.state.value,
            'dir': self.dir.value,
            'rule': self.rule,
            'moved': self.moved,
            'node_after': self.node_after,
            'right_steps': self.right_steps,
            'walk_steps': self.walk_steps,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'RobotRecord':
        return cls(
            id=data['id'],
            position=data['position'],
            state=RobotState(data['state']),
            dir=Direction(data['dir']),
            rule=data.get('rule'),
            moved=data['moved'],
            node_after=data['node_after'],
            right_steps=data.get('right_steps', 0),
            walk_steps=data.get('walk_steps', 0),
        )


@dataclass(frozen=True)
class TraceEvent:
    round: int
    records: Tuple[RobotRecord, ...]
    present: Tuple[bool, ...]

    def record_of(self, robot_id: int) -> RobotRecord:
        for record in self.records:
            if record.id == robot_id:
                return record
        raise KeyError(robot_id)

    def to_dict(self) -> dict:
        return {
            'round': self.round,
            'records': [record.to_dict() for record in self.records],
            'present': [int(bit) for bit in self.present],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'TraceEvent':
        return cls(
            round=data['round'],
            records=tuple(RobotRecord.from_dict(record) for record in data['records']),
            present=tuple(bool(bit) for bit in data['present']),
        )


@dataclass(frozen=True)
class TraceHeader:
    n: int
    robot_count: int
    ids: Tuple[int, ...]
    horizon: int
    class_claim: Optional[str] = None
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'R': self.robot_count,
            'ids': list(self.ids),
            'horizon': self.horizon,
            'class_claim': self.class_claim,
            'seed': self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'TraceHeader':
        return cls(
            n=data['n'],
            robot_count=data['R'],
            ids=tuple(data['ids']),
            horizon=data['horizon'],
            class_claim=data.get('class_claim'),
            seed=data.get('seed'),
        )


@dataclass
class Trace:
    header: TraceHeader
    events: List[TraceEvent] = field(default_factory=list)

    def termination_rounds(self) -> Dict[int, Optional[int]]:
        '''
        Round in which each robot fired a termination rule, None if it never did.
        '''
        rounds: Dict[int, Optional[int]] = {robot_id: None for robot_id in self.header.ids}
        for event in self.events:
            for record in event.records:
                if record.rule in TERMINATION_LABELS and rounds[record.id] is None:
                    rounds[record.id] = event.round
        return rounds


@dataclass(frozen=True)
class RunOutcome:
    termination_rounds: Dict[int, Optional[int]]
    final_positions: Dict[int, int]
    halted_at_horizon: bool
    rounds_executed: int

    @property
    def terminated_count(self) -> int:
        return sum(1 for value in self.termination_rounds.values() if value is not None)

    def to_dict(self) -> dict:
        return {
            'termination_rounds': {str(key): value for key, value in sorted(self.termination_rounds.items())},
            'final_positions': {str(key): value for key, value in sorted(self.final_positions.items())},
            'halted_at_horizon': self.halted_at_horizon,
            'rounds_executed': self.rounds_executed,
        }
