from enum import Enum
from typing import Any
from typing import Dict
from typing import List
from typing import Optional

from pydantic import BaseModel
from pydantic import Field
from pydantic import validator

from models.checks import Variant
from models.checks import Verdict
from models.ring import ClassTag
from models.ring import DynClass
from models.ring import ScheduleDocument


class ACPolicy(str, Enum):
    ROTATING = 'rotating'
    RANDOM = 'random'
    FIXED = 'fixed'


class AlgorithmName(str, Enum):
    GDG = 'gdg'
    IDLE = 'idle'


class GeneratorSpec(BaseModel):
    '''
    Seeded recipe for one ring of a dynamics class. Satisfiability is checked by the generator.
    '''
    dyn_class: ClassTag = Field(..., alias='class')
    n: int
    seed: int = 0
    delta: Optional[int] = None
    # COT: the eventual missing edge and the round (after any blackout) from which it stays absent
    missing_edge: Optional[int] = None
    kill_round: Optional[int] = None
    ac_policy: ACPolicy = ACPolicy.ROTATING
    cycle_length: Optional[int] = None
    prefix_length: Optional[int] = None
    blackout: int = 0
    # chance that an edge with no presence obligation is absent in a snapshot
    absence: float = 0.3

    class Config:
        allow_population_by_field_name = True

    @validator('delta', always=True)
    def bre_needs_delta(cls, v, values):
        if values.get('dyn_class') == ClassTag.BRE and (v is None or v < 1):
            raise ValueError('class bre requires delta >= 1')
        return v

    def target(self) -> DynClass:
        return DynClass.parse(self.dyn_class.value, self.delta)


class RunConfig(BaseModel):
    n: Optional[int] = None
    ids: List[int]
    robot_count: Optional[int] = Field(None, alias='R')
    # nodes in the order of ids; seeded random when absent
    placement: Optional[List[int]] = None
    dyn_class: Optional[ClassTag] = Field(None, alias='class')
    delta: Optional[int] = None
    schedule: Optional[ScheduleDocument] = None
    schedule_path: Optional[str] = None
    generator: Dict[str, Any] = {}
    horizon: Optional[int] = None
    seed: Optional[int] = None
    trace_out: Optional[str] = None
    verdict_out: Optional[str] = None
    include_trace: bool = False

    class Config:
        allow_population_by_field_name = True

    @validator('ids')
    def valid_ids(cls, v):
        if len(v) < 4:
            raise ValueError('at least 4 robot ids are required')
        if len(set(v)) != len(v):
            raise ValueError('robot ids must be distinct')
        if any(robot_id <= 0 for robot_id in v):
            raise ValueError('robot ids must be positive')
        return v

    @validator('robot_count')
    def count_matches(cls, v, values):
        ids = values.get('ids')
        if v is not None and ids is not None and v != len(ids):
            raise ValueError(f'R={v} but {len(ids)} ids were given')
        return v

    @validator('delta', always=True)
    def bre_needs_delta(cls, v, values):
        if values.get('dyn_class') == ClassTag.BRE and (v is None or v < 1):
            raise ValueError('class bre requires delta >= 1')
        return v

    @validator('placement')
    def placement_matches(cls, v, values):
        ids = values.get('ids')
        if v is not None and ids is not None and len(v) != len(ids):
            raise ValueError('placement must list one node per id')
        return v

    @validator('horizon')
    def positive_horizon(cls, v):
        if v is not None and v < 1:
            raise ValueError('horizon must be >= 1')
        return v

    def target(self) -> Optional[DynClass]:
        if self.dyn_class is None:
            return None
        return DynClass.parse(self.dyn_class.value, self.delta)


class AdversaryConfig(BaseModel):
    n: int
    ids: List[int]
    placement: Optional[List[int]] = None
    r1: Optional[int] = None
    r2: Optional[int] = None
    horizon: Optional[int] = None
    seed: Optional[int] = None
    algorithm: AlgorithmName = AlgorithmName.GDG
    trace_out: Optional[str] = None
    schedule_out: Optional[str] = None
    include_trace: bool = False

    @validator('horizon')
    def positive_horizon(cls, v):
        if v is not None and v < 1:
            raise ValueError('horizon must be >= 1')
        return v


class SweepSpec(BaseModel):
    '''
    Cartesian product of classes and seeds; ids are drawn per seed when not given.
    '''
    classes: List[ClassTag]
    seeds: int = 20
    seed_start: int = 0
    n: int = 6
    robot_count: int = Field(4, alias='R')
    ids: Optional[List[int]] = None
    id_upper: int = 16
    delta: int = 2
    horizon: Optional[int] = None

    class Config:
        allow_population_by_field_name = True


class BatchSpec(BaseModel):
    # kept raw so one malformed run does not reject the whole batch
    runs: List[Any] = []
    sweeps: List[SweepSpec] = []

    @classmethod
    def from_document(cls, document: Any) -> 'BatchSpec':
        '''
        A batch file holds either a bare list of run configs or a {runs, sweeps} object.
        '''
        if document is None:
            return cls()
        if isinstance(document, list):
            return cls(runs=document)
        return cls.parse_obj(document)


class RunResult(BaseModel):
    dyn_class: Optional[str] = None
    n: int
    robot_count: int
    ids: List[int]
    seed: int
    horizon: int
    verdict: Verdict
    expected: Optional[Variant] = None
    expected_met: Optional[bool] = None
    outcome: Dict[str, Any] = {}
    classes: Dict[str, bool] = {}
    trace: Optional[List[str]] = None


class AdversaryReport(BaseModel):
    n: int
    ids: List[int]
    r1: int
    r2: int
    algorithm: AlgorithmName
    rounds: int
    never_colocated: bool
    defeated_round: Optional[int] = None
    min_distance: int
    ac_verified: bool
    absent_rounds: int = 0
    cases: Dict[str, int] = {}
    fallbacks: int = 0
    schedule: Optional[ScheduleDocument] = None
    trace: Optional[List[str]] = None


class BatchEntryError(BaseModel):
    index: int
    error: str


class BatchReport(BaseModel):
    total: int = 0
    completed: int = 0
    failed: List[BatchEntryError] = []
    matrix: Dict[str, Dict[str, int]] = {}
    runs_per_class: Dict[str, int] = {}
    strongest: Dict[str, Optional[Variant]] = {}
    expected: Dict[str, Variant] = {}
    hierarchy_consistent: bool = True
    results: List[RunResult] = []
