from enum import Enum
from typing import List
from typing import Optional

from pydantic import BaseModel
from pydantic import validator

from config import ConfigClass
from models.ring import ClassTag
from models.ring import DynClass


class Variant(str, Enum):
    G = 'G'
    G_E = 'G_E'
    G_W = 'G_W'
    G_EW = 'G_EW'


# strongest first; G implies G_E and G_W, both imply G_EW
VARIANT_STRENGTH = [Variant.G, Variant.G_E, Variant.G_W, Variant.G_EW]


class Violation(BaseModel):
    invariant: str
    round: int
    robot: Optional[int] = None
    detail: str = ''


class Verdict(BaseModel):
    safety_ok: bool
    variants: List[Variant] = []
    termination_round: Optional[int] = None
    terminated: int = 0
    bound: Optional[int] = None
    bound_ok: Optional[bool] = None
    violations: List[Violation] = []

    def satisfies(self, variant: Variant) -> bool:
        return variant in self.variants

    def strongest(self) -> Optional[Variant]:
        for variant in VARIANT_STRENGTH:
            if variant in self.variants:
                return variant
        return None


class BoundParams(BaseModel):
    '''
    Inputs of a round bound; constants left unset take the configured defaults.
    '''
    dyn_class: ClassTag
    n: int
    robot_count: int
    id_rmin: int
    delta: Optional[int] = None
    c1: Optional[int] = None
    c2: Optional[int] = None
    c3: Optional[int] = None

    @validator('n', 'robot_count', 'id_rmin')
    def positive(cls, v):
        if v < 1:
            raise ValueError('must be positive')
        return v

    @validator('delta', 'c1', 'c2', 'c3')
    def positive_if_set(cls, v):
        if v is not None and v < 1:
            raise ValueError('must be positive')
        return v

    @classmethod
    def of(cls, dyn_class: DynClass, n: int, robot_count: int, id_rmin: int, **constants) -> 'BoundParams':
        return cls(dyn_class=dyn_class.tag, n=n, robot_count=robot_count, id_rmin=id_rmin,
                   delta=dyn_class.delta, **constants)

    def constants(self) -> tuple:
        if self.dyn_class == ClassTag.AC:
            defaults = ConfigClass.AC_BOUND_CONSTANTS
        else:
            defaults = ConfigClass.BRE_BOUND_CONSTANTS
        chosen = (self.c1, self.c2, self.c3)
        return tuple(default if value is None else value for value, default in zip(chosen, defaults))
