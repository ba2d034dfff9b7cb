from fastapi import APIRouter
from fastapi_utils.cbv import cbv

from models.base_models import APIResponse
from models.experiments import AdversaryConfig
from models.experiments import RunConfig
from models.requests import AdversaryPOSTResponse
from models.requests import SimulationPOSTResponse
from resources.error_handler import catch_internal
from resources.logger_factory import LoggerFactory
from services.experiments import Experiment

router = APIRouter()
_API_NAMESPACE = 'api_simulations'
_logger = LoggerFactory(_API_NAMESPACE).get_logger()


@cbv(router)
class Simulations:
    @router.post('/simulations', response_model=SimulationPOSTResponse, summary='Run GDG on one ring and check it')
    @catch_internal(_API_NAMESPACE)
    def post(self, data: RunConfig):
        '''
        Simulate, then report the verdict, the outcome and (on request) the trace lines.
        Server side file paths are ignored.
        '''
        api_response = APIResponse()
        config = data.copy(update={'schedule_path': None, 'trace_out': None, 'verdict_out': None})
        result = Experiment.run(config)
        _logger.info(f'simulation {result.dyn_class} n={result.n} ids={result.ids}: {result.verdict.variants}')
        api_response.result = result.dict()
        return api_response.json_response()


@cbv(router)
class Adversary:
    @router.post('/adversary', response_model=AdversaryPOSTResponse, summary='Run the always-connected adversary')
    @catch_internal(_API_NAMESPACE)
    def post(self, data: AdversaryConfig):
        api_response = APIResponse()
        config = data.copy(update={'trace_out': None, 'schedule_out': None})
        api_response.result = Experiment.adversary_payload(config)
        return api_response.json_response()
