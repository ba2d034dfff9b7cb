'''
Dynamic rings as eventually-periodic evolving graphs.

Edge i joins node i and node (i+1) mod n; "right" is the direction of increasing
node index. Robots never see these indices, the fixed orientation only plays the
part of their shared chirality.
'''
import json
import math
from typing import FrozenSet
from typing import List
from typing import Optional
from typing import Tuple

import networkx as nx

from models.ring import ClassTag
from models.ring import DynClass
from models.ring import EvolvingRing
from models.ring import MIN_RING_SIZE
from models.ring import Schedule
from models.ring import ScheduleDocument
from models.ring import Snapshot
from models.ring import TimeInterval
from models.robot import Direction
from resources.error_handler import DimensionMismatchError
from resources.error_handler import InvalidIntervalError
from resources.error_handler import InvalidRingError
from resources.helpers import canonical_json


def make_ring(n: int, prefix, cycle) -> EvolvingRing:
    '''
    Build and validate a ring from raw snapshot sequences (any 0/1 or bool items).
    '''
    if n < MIN_RING_SIZE:
        raise InvalidRingError(f'n={n}, rings need n >= {MIN_RING_SIZE}')
    prefix = tuple(tuple(bool(bit) for bit in snapshot) for snapshot in prefix)
    cycle = tuple(tuple(bool(bit) for bit in snapshot) for snapshot in cycle)
    if not cycle:
        raise InvalidRingError('cycle must hold at least one snapshot')
    for snapshot in prefix + cycle:
        if len(snapshot) != n:
            raise InvalidRingError(f'snapshot of length {len(snapshot)} in a ring of size {n}')
    return EvolvingRing(n, Schedule(prefix, cycle))


def snapshot_at(ring: EvolvingRing, t: int) -> Snapshot:
    if t < 0:
        raise InvalidIntervalError(f'round {t} is negative')
    return ring.schedule.at(t)


def edge_present(ring: EvolvingRing, e: int, t: int) -> bool:
    return snapshot_at(ring, t)[e]


def unroll(ring: EvolvingRing, length: int) -> List[Snapshot]:
    return [ring.schedule.at(t) for t in range(length)]


def absent_edges(ring: EvolvingRing, t: int) -> List[int]:
    return [e for e, present in enumerate(snapshot_at(ring, t)) if not present]


# geometry

def right_edge_of(v: int, n: int) -> int:
    return v


def left_edge_of(v: int, n: int) -> int:
    return (v - 1) % n


def edge_towards(v: int, direction: Direction, n: int) -> int:
    if direction == Direction.RIGHT:
        return right_edge_of(v, n)
    if direction == Direction.LEFT:
        return left_edge_of(v, n)
    raise ValueError('no edge towards bot')


def neighbor(v: int, direction: Direction, n: int) -> int:
    if direction == Direction.RIGHT:
        return (v + 1) % n
    if direction == Direction.LEFT:
        return (v - 1) % n
    return v


def ring_distance(u: int, v: int, n: int) -> int:
    d = (v - u) % n
    return min(d, n - d)


def seg(u: int, v: int, n: int) -> List[int]:
    '''
    Nodes strictly between u and v walking rightward from u.
    '''
    nodes = []
    w = (u + 1) % n
    while w != v % n:
        nodes.append(w)
        w = (w + 1) % n
    return nodes


def footprint(ring: EvolvingRing) -> FrozenSet[int]:
    return frozenset(
        e for snapshot in ring.prefix + ring.cycle for e, present in enumerate(snapshot) if present
    )


def eventual_underlying(ring: EvolvingRing) -> FrozenSet[int]:
    return frozenset(
        e for snapshot in ring.cycle for e, present in enumerate(snapshot) if present
    )


# splicing

def _rebase(ring: EvolvingRing, prefix_length: int) -> Tuple[List[Snapshot], List[Snapshot]]:
    '''
    Unroll the prefix to prefix_length rounds, rotating the cycle to stay aligned.
    '''
    length = max(prefix_length, len(ring.prefix))
    prefix = unroll(ring, length)
    cycle = [ring.schedule.at(length + j) for j in range(len(ring.cycle))]
    return prefix, cycle


def _masked(snapshot: Snapshot, e: int) -> Snapshot:
    return snapshot[:e] + (False,) + snapshot[e + 1:]


def remove_edge_interval(ring: EvolvingRing, e: int, interval: Optional[TimeInterval]) -> EvolvingRing:
    '''
    The ring with edge e removed during interval (None is the empty interval).
    '''
    if interval is None:
        return ring
    if not 0 <= e < ring.n:
        raise InvalidRingError(f'edge {e} outside a ring of size {ring.n}')
    if interval.start < 0 or (interval.end is not None and interval.start > interval.end):
        raise InvalidIntervalError(f'[{interval.start}, {interval.end}]')

    if interval.infinite:
        prefix, cycle = _rebase(ring, interval.start)
        cycle = [_masked(snapshot, e) for snapshot in cycle]
    else:
        prefix, cycle = _rebase(ring, interval.end + 1)
    prefix = [_masked(snapshot, e) if t in interval else snapshot for t, snapshot in enumerate(prefix)]
    return EvolvingRing(ring.n, Schedule(tuple(prefix), tuple(cycle)))


def splice(a: EvolvingRing, t: int, b: EvolvingRing) -> EvolvingRing:
    '''
    a up to round t included, b from round t+1 on.
    '''
    if a.n != b.n:
        raise DimensionMismatchError(f'cannot splice rings of size {a.n} and {b.n}')
    if t < 0:
        raise InvalidIntervalError(f'splice round {t} is negative')
    length = max(t + 1, len(b.prefix))
    prefix = [a.schedule.at(s) if s <= t else b.schedule.at(s) for s in range(length)]
    cycle = [b.schedule.at(length + j) for j in range(len(b.cycle))]
    return EvolvingRing(a.n, Schedule(tuple(prefix), tuple(cycle)))


# class membership

def _connected(n: int, edges) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((e, (e + 1) % n) for e in edges)
    return nx.is_connected(graph)


def _present_edges(snapshot: Snapshot) -> List[int]:
    return [e for e, present in enumerate(snapshot) if present]


def _windows_covered(ring: EvolvingRing, delta: int) -> bool:
    cycles = max(2, math.ceil(delta / len(ring.cycle)) + 1)
    rounds = unroll(ring, len(ring.prefix) + cycles * len(ring.cycle))
    for e in range(ring.n):
        gap = 0
        for snapshot in rounds:
            gap = 0 if snapshot[e] else gap + 1
            if gap >= delta:
                return False
    return True


def verify_class(ring: EvolvingRing, c: DynClass) -> bool:
    '''
    Decide membership of ring in a dynamics class. The footprint is the full n-ring.
    '''
    snapshots = ring.prefix + ring.cycle
    if c.tag == ClassTag.ST:
        return all(all(snapshot) for snapshot in snapshots)
    if c.tag == ClassTag.AC:
        return all(_connected(ring.n, _present_edges(snapshot)) for snapshot in snapshots)
    if c.tag == ClassTag.RE:
        return len(eventual_underlying(ring)) == ring.n
    if c.tag == ClassTag.BRE:
        return _windows_covered(ring, c.delta)
    if c.tag == ClassTag.COT:
        return _connected(ring.n, eventual_underlying(ring))
    raise ValueError(f'unknown class {c}')


def classes_of(ring: EvolvingRing, delta: Optional[int] = None) -> dict:
    '''
    Membership of ring in every class; BRE is checked for delta (default: cycle length).
    '''
    delta = delta or max(1, len(ring.cycle))
    return {
        str(c): verify_class(ring, c)
        for c in (
            DynClass(ClassTag.COT),
            DynClass(ClassTag.RE),
            DynClass(ClassTag.BRE, delta),
            DynClass(ClassTag.AC),
            DynClass(ClassTag.ST),
        )
    }


# schedule file format

def load_schedule(path: str) -> EvolvingRing:
    with open(path, 'r') as handle:
        return ScheduleDocument.parse_obj(json.load(handle)).to_ring()


def dump_schedule(ring: EvolvingRing) -> str:
    return canonical_json(ScheduleDocument.from_ring(ring).dict())


def save_schedule(ring: EvolvingRing, path: str) -> None:
    with open(path, 'w') as handle:
        handle.write(dump_schedule(ring))
        handle.write('\n')
