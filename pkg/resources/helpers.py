import json
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

import numpy as np

from config import ConfigClass

# independent random streams drawn from one seed
STREAM_RING = 0
STREAM_PLACEMENT = 1
STREAM_IDS = 2


def resolve_seed(seed: Optional[int]) -> int:
    '''
    explicit seed, else GDG_SEED from the environment
    '''
    return ConfigClass.GDG_SEED if seed is None else seed


def make_rng(seed: int, stream: int = STREAM_RING) -> np.random.Generator:
    '''
    PCG64 generator seeded by SeedSequence(seed, spawn_key=(stream,)).
    '''
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


def parse_ids(raw: str) -> List[int]:
    '''
    "1,2,3,5" -> [1, 2, 3, 5]
    '''
    return [int(part) for part in raw.split(',') if part.strip()]


def parse_placement(raw: str, ids: Sequence[int]) -> Dict[int, int]:
    '''
    "0,2,4,6" assigns the nodes to ids in the given order.
    '''
    nodes = parse_ids(raw)
    if len(nodes) != len(ids):
        raise ValueError(f'placement lists {len(nodes)} nodes for {len(ids)} robots')
    return dict(zip(ids, nodes))


def random_placement(n: int, ids: Sequence[int], seed: int) -> Dict[int, int]:
    rng = make_rng(seed, STREAM_PLACEMENT)
    return {robot_id: int(node) for robot_id, node in zip(ids, rng.integers(0, n, size=len(ids)))}


def random_ids(count: int, upper: int, seed: int) -> List[int]:
    '''
    count distinct ids drawn from [1, upper], sorted.
    '''
    rng = make_rng(seed, STREAM_IDS)
    return sorted(int(value) for value in rng.choice(np.arange(1, upper + 1), size=count, replace=False))


def canonical_json(data) -> str:
    '''
    Sorted keys, no whitespace: equal inputs give byte-identical output.
    '''
    return json.dumps(data, sort_keys=True, separators=(',', ':'))
