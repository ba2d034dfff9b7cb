from typing import Optional

from pydantic import BaseModel
from pydantic import Field

from models.base_models import APIResponse
from models.ring import ClassTag
from models.ring import DynClass
from models.ring import ScheduleDocument


class VerifyPOST(BaseModel):
    schedule: ScheduleDocument
    dyn_class: Optional[ClassTag] = Field(None, alias='class')
    delta: Optional[int] = None

    class Config:
        allow_population_by_field_name = True

    def target(self) -> Optional[DynClass]:
        if self.dyn_class is None:
            return None
        return DynClass.parse(self.dyn_class.value, self.delta)


class GeneratePOSTResponse(APIResponse):
    result: dict = Field({}, example={
        'code': 200,
        'error_msg': '',
        'result': {'n': 4, 'prefix': [], 'cycle': [[1, 1, 1, 1]]},
        'total': 1,
    })


class VerifyPOSTResponse(APIResponse):
    result: dict = Field({}, example={
        'code': 200,
        'error_msg': '',
        'result': {
            'claim': 'ac',
            'claim_ok': True,
            'classes': {'cot': True, 're': True, 'bre(1)': False, 'ac': True, 'st': False},
        },
        'total': 1,
    })


class SimulationPOSTResponse(APIResponse):
    result: dict = Field({}, example={
        'code': 200,
        'error_msg': '',
        'result': {
            'dyn_class': 'st',
            'n': 4,
            'robot_count': 4,
            'ids': [1, 2, 3, 4],
            'seed': 0,
            'horizon': 97,
            'verdict': {
                'safety_ok': True,
                'variants': ['G', 'G_E', 'G_W', 'G_EW'],
                'termination_round': 23,
                'terminated': 4,
                'bound': 96,
                'bound_ok': True,
                'violations': [],
            },
            'expected': 'G',
            'expected_met': True,
        },
        'total': 1,
    })


class AdversaryPOSTResponse(APIResponse):
    result: dict = Field({}, example={
        'code': 200,
        'error_msg': '',
        'result': {
            'n': 6,
            'ids': [1, 2, 3, 4],
            'r1': 4,
            'r2': 3,
            'algorithm': 'gdg',
            'rounds': 200,
            'never_colocated': True,
            'min_distance': 1,
            'ac_verified': True,
        },
        'total': 1,
    })
