from dataclasses import dataclass
from enum import Enum
from typing import List
from typing import Optional
from typing import Tuple

from pydantic import BaseModel
from pydantic import validator

# present[i] is True when edge i (joining node i and node i+1 mod n) exists this round
Snapshot = Tuple[bool, ...]

MIN_RING_SIZE = 4


class ClassTag(str, Enum):
    COT = 'cot'
    RE = 're'
    BRE = 'bre'
    AC = 'ac'
    ST = 'st'


@dataclass(frozen=True)
class DynClass:
    tag: ClassTag
    delta: Optional[int] = None

    def __post_init__(self):
        if self.tag == ClassTag.BRE and (self.delta is None or self.delta < 1):
            raise ValueError('BRE class requires delta >= 1')

    @classmethod
    def parse(cls, tag: str, delta: Optional[int] = None) -> 'DynClass':
        tag = ClassTag(tag.lower())
        return cls(tag, delta if tag == ClassTag.BRE else None)

    def __str__(self):
        if self.tag == ClassTag.BRE:
            return f'bre({self.delta})'
        return self.tag.value


@dataclass(frozen=True)
class TimeInterval:
    '''
    Closed round interval [start, end]; end None stands for "forever".
    '''
    start: int
    end: Optional[int] = None

    @property
    def infinite(self) -> bool:
        return self.end is None

    def __contains__(self, t: int) -> bool:
        return self.start <= t and (self.end is None or t <= self.end)


@dataclass(frozen=True)
class Schedule:
    prefix: Tuple[Snapshot, ...]
    cycle: Tuple[Snapshot, ...]

    def at(self, t: int) -> Snapshot:
        if t < len(self.prefix):
            return self.prefix[t]
        return self.cycle[(t - len(self.prefix)) % len(self.cycle)]


@dataclass(frozen=True)
class EvolvingRing:
    n: int
    schedule: Schedule

    @property
    def prefix(self) -> Tuple[Snapshot, ...]:
        return self.schedule.prefix

    @property
    def cycle(self) -> Tuple[Snapshot, ...]:
        return self.schedule.cycle

    @classmethod
    def static(cls, n: int) -> 'EvolvingRing':
        return cls(n, Schedule((), ((True,) * n,)))


class ScheduleDocument(BaseModel):
    '''
    JSON schedule file: {"n": int, "prefix": [[bit, ...], ...], "cycle": [[bit, ...], ...]}
    '''
    n: int
    prefix: List[List[int]] = []
    cycle: List[List[int]]

    @validator('n')
    def ring_size(cls, v):
        if v < MIN_RING_SIZE:
            raise ValueError(f'rings need n >= {MIN_RING_SIZE}')
        return v

    @validator('cycle')
    def cycle_not_empty(cls, v):
        if not v:
            raise ValueError('cycle must hold at least one snapshot')
        return v

    @validator('prefix', 'cycle')
    def bits_only(cls, v):
        if any(bit not in (0, 1) for snapshot in v for bit in snapshot):
            raise ValueError('snapshot bits must be 0 or 1')
        return v

    @validator('prefix', 'cycle')
    def snapshot_length(cls, v, values):
        n = values.get('n')
        if n is not None and any(len(snapshot) != n for snapshot in v):
            raise ValueError(f'every snapshot must have exactly {n} bits')
        return v

    def to_ring(self) -> EvolvingRing:
        prefix = tuple(tuple(bool(bit) for bit in snapshot) for snapshot in self.prefix)
        cycle = tuple(tuple(bool(bit) for bit in snapshot) for snapshot in self.cycle)
        return EvolvingRing(self.n, Schedule(prefix, cycle))

    @classmethod
    def from_ring(cls, ring: EvolvingRing) -> 'ScheduleDocument':
        return cls(
            n=ring.n,
            prefix=[[int(bit) for bit in snapshot] for snapshot in ring.prefix],
            cycle=[[int(bit) for bit in snapshot] for snapshot in ring.cycle],
        )
