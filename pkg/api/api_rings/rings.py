from fastapi import APIRouter
from fastapi_utils.cbv import cbv

from gathering.ring_model import verify_class
from models.base_models import APIResponse
from models.experiments import GeneratorSpec
from models.requests import GeneratePOSTResponse
from models.requests import VerifyPOST
from models.requests import VerifyPOSTResponse
from models.ring import ScheduleDocument
from resources.error_handler import InvalidRunConfigError
from resources.error_handler import catch_internal
from resources.logger_factory import LoggerFactory
from services.experiments import Experiment

router = APIRouter()
_API_NAMESPACE = 'api_rings'
_logger = LoggerFactory(_API_NAMESPACE).get_logger()


@cbv(router)
class RingGenerate:
    @router.post('/rings/generate', response_model=GeneratePOSTResponse, summary='Generate a seeded ring of a class')
    @catch_internal(_API_NAMESPACE)
    def post(self, data: GeneratorSpec):
        api_response = APIResponse()
        ring = Experiment.generate(data)
        _logger.info(f'generated {data.target()} ring with n={ring.n} seed={data.seed}')
        api_response.result = ScheduleDocument.from_ring(ring).dict()
        return api_response.json_response()


@cbv(router)
class RingVerify:
    @router.post('/rings/verify', response_model=VerifyPOSTResponse, summary='Check class membership of a schedule')
    @catch_internal(_API_NAMESPACE)
    def post(self, data: VerifyPOST):
        '''
        Membership of the schedule in every class, plus the verdict on the claimed class if one is given.
        '''
        api_response = APIResponse()
        try:
            claim = data.target()
        except ValueError as exce:
            raise InvalidRunConfigError(str(exce))
        result = {
            'claim': str(claim) if claim else None,
            'claim_ok': verify_class(data.schedule.to_ring(), claim) if claim else None,
            'classes': Experiment.verify(data.schedule, data.delta),
        }
        api_response.result = result
        return api_response.json_response()
