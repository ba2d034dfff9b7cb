from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from typing import FrozenSet
from typing import Tuple

UNSET = -1


class RobotState(str, Enum):
    RIGHTER = 'righter'
    DUMB_SEARCHER = 'dumbSearcher'
    AWARE_SEARCHER = 'awareSearcher'
    POTENTIAL_MIN = 'potentialMin'
    WAITING_WALKER = 'waitingWalker'
    MIN_WAITING_WALKER = 'minWaitingWalker'
    HEAD_WALKER = 'headWalker'
    TAIL_WALKER = 'tailWalker'
    MIN_TAIL_WALKER = 'minTailWalker'
    LEFT_WALKER = 'leftWalker'


MIN_STATES = frozenset({RobotState.MIN_WAITING_WALKER, RobotState.MIN_TAIL_WALKER})
WAITING_STATES = frozenset({RobotState.WAITING_WALKER, RobotState.MIN_WAITING_WALKER})
RIGHT_MOVING_STATES = frozenset({RobotState.RIGHTER, RobotState.POTENTIAL_MIN})
SEARCHER_STATES = frozenset({RobotState.DUMB_SEARCHER, RobotState.AWARE_SEARCHER})
WALKER_STATES = frozenset({RobotState.HEAD_WALKER, RobotState.TAIL_WALKER, RobotState.MIN_TAIL_WALKER})
NOT_WALKER_STATES = RIGHT_MOVING_STATES | SEARCHER_STATES


class Direction(str, Enum):
    RIGHT = 'right'
    LEFT = 'left'
    BOT = 'bot'


class EdgeRound(str, Enum):
    CURRENT = 'current'
    PREVIOUS = 'previous'


class RuleId(str, Enum):
    '''
    Guarded rules of GDG, declared in dispatch priority order.
    '''
    TERM1 = 'Term1'
    TERM2 = 'Term2'
    T1 = 'T1'
    T2 = 'T2'
    T3 = 'T3'
    W1 = 'W1'
    K1 = 'K1'
    K2 = 'K2'
    K3 = 'K3'
    K4 = 'K4'
    M1 = 'M1'
    M2 = 'M2'
    M3 = 'M3'
    M4 = 'M4'
    M5 = 'M5'
    M6 = 'M6'
    M7 = 'M7'
    M8 = 'M8'
    M9 = 'M9'
    M10 = 'M10'
    M11 = 'M11'

    @property
    def priority(self) -> int:
        return _RULE_ORDER[self]


_RULE_ORDER = {rule: index for index, rule in enumerate(RuleId)}
TERMINATION_RULES = frozenset({RuleId.TERM1, RuleId.TERM2})


@dataclass(frozen=True)
class RobotVars:
    id: int
    state: RobotState = RobotState.RIGHTER
    dir: Direction = Direction.RIGHT
    right_steps: int = 0
    id_potential_min: int = UNSET
    id_min: int = UNSET
    walker_mate: FrozenSet[int] = field(default_factory=frozenset)
    walk_steps: int = 0
    id_head_walker: int = UNSET
    terminated: bool = False

    def __post_init__(self):
        if self.id <= 0:
            raise ValueError(f'robot ids are positive, got {self.id}')

    @classmethod
    def initial(cls, robot_id: int) -> 'RobotVars':
        return cls(robot_id)

    def to_dict(self) -> dict:
        return {
            'id': self.id,
            'state': self.state.value,
            'dir': self.dir.value,
            'right_steps': self.right_steps,
            'id_potential_min': self.id_potential_min,
            'id_min': self.id_min,
            'walker_mate': sorted(self.walker_mate),
            'walk_steps': self.walk_steps,
            'id_head_walker': self.id_head_walker,
            'terminated': self.terminated,
        }


@dataclass(frozen=True)
class EdgeSense:
    '''
    Presence of the two edges adjacent to a robot's node, now and one round ago.
    '''
    right_current: bool = False
    left_current: bool = False
    right_previous: bool = False
    left_previous: bool = False

    def exists_edge(self, direction: Direction, when: EdgeRound) -> bool:
        if direction == Direction.RIGHT:
            return self.right_current if when == EdgeRound.CURRENT else self.right_previous
        if direction == Direction.LEFT:
            return self.left_current if when == EdgeRound.CURRENT else self.left_previous
        return False


@dataclass(frozen=True)
class View:
    '''
    What one robot captures during a Look phase.
    '''
    robot: RobotVars
    mates: Tuple[RobotVars, ...]
    edges: EdgeSense
    has_moved: bool
    n: int
    robot_count: int

    def __post_init__(self):
        if any(mate.id == self.robot.id for mate in self.mates):
            raise ValueError('a view never lists its own robot among the mates')

    def exists_edge(self, direction: Direction, when: EdgeRound = EdgeRound.CURRENT) -> bool:
        return self.edges.exists_edge(direction, when)

    @property
    def mate_ids(self) -> FrozenSet[int]:
        return frozenset(mate.id for mate in self.mates)

    @property
    def node_ids(self) -> FrozenSet[int]:
        return self.mate_ids | {self.robot.id}
