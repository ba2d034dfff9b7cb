import enum
from functools import wraps

from models.base_models import APIResponse
from models.base_models import EAPIResponseCode
from resources.logger_factory import LoggerFactory

_logger = LoggerFactory('internal_error').get_logger()


class ECustomizedError(enum.Enum):
    '''
    Enum of customized errors
    '''
    INVALID_INTERVAL = "INVALID_INTERVAL"
    DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
    INVALID_RING = "INVALID_RING"
    PROTOCOL_VIOLATION = "PROTOCOL_VIOLATION"
    CONTRACT_VIOLATION = "CONTRACT_VIOLATION"
    UNSATISFIABLE_SPEC = "UNSATISFIABLE_SPEC"
    BOUND_NOT_APPLICABLE = "BOUND_NOT_APPLICABLE"
    CLASS_MISMATCH = "CLASS_MISMATCH"
    UNKNOWN_ROBOT = "UNKNOWN_ROBOT"
    INVALID_RUN_CONFIG = "INVALID_RUN_CONFIG"
    INTERNAL = "INTERNAL"


def customized_error_template(customized_error: ECustomizedError):
    '''
    get error template
    '''
    return {
        "INVALID_INTERVAL": "[Invalid interval] %s",
        "DIMENSION_MISMATCH": "[Dimension mismatch] %s",
        "INVALID_RING": "[Invalid ring] %s",
        "PROTOCOL_VIOLATION": "[Protocol violation] %s",
        "CONTRACT_VIOLATION": "[Contract violation] %s",
        "UNSATISFIABLE_SPEC": "[Unsatisfiable generator spec] %s",
        "BOUND_NOT_APPLICABLE": "[Bound not applicable] %s",
        "CLASS_MISMATCH": "[Class mismatch] %s",
        "UNKNOWN_ROBOT": "[Unknown robot] %s",
        "INVALID_RUN_CONFIG": "[Invalid run config] %s",
        "INTERNAL": "[Internal] %s",
    }.get(
        customized_error.name, "Unknown Error"
    )


class GatheringError(Exception):
    '''
    Base of every error raised by the simulator on bad input or broken contracts.
    '''
    error = ECustomizedError.INTERNAL

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(customized_error_template(self.error) % detail)


class InvalidIntervalError(GatheringError):
    error = ECustomizedError.INVALID_INTERVAL


class DimensionMismatchError(GatheringError):
    error = ECustomizedError.DIMENSION_MISMATCH


class InvalidRingError(GatheringError):
    error = ECustomizedError.INVALID_RING


class ProtocolViolationError(GatheringError):
    error = ECustomizedError.PROTOCOL_VIOLATION


class ContractViolationError(GatheringError):
    error = ECustomizedError.CONTRACT_VIOLATION


class UnsatisfiableSpecError(GatheringError):
    error = ECustomizedError.UNSATISFIABLE_SPEC


class BoundNotApplicableError(GatheringError):
    error = ECustomizedError.BOUND_NOT_APPLICABLE


class ClassMismatchError(GatheringError):
    error = ECustomizedError.CLASS_MISMATCH


class UnknownRobotError(GatheringError):
    error = ECustomizedError.UNKNOWN_ROBOT


class InvalidRunConfigError(GatheringError):
    error = ECustomizedError.INVALID_RUN_CONFIG


def catch_internal(api_namespace):
    '''
    decorator to turn simulator errors into 400 and anything else into 500.
    '''

    def decorator(func):
        @wraps(func)
        def inner(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except GatheringError as exce:
                respon = APIResponse()
                respon.code = EAPIResponseCode.bad_request
                respon.result = None
                respon.error_msg = str(exce)
                _logger.warning(api_namespace + " " + respon.error_msg)
                return respon.json_response()
            except Exception as exce:
                respon = APIResponse()
                respon.code = EAPIResponseCode.internal_error
                respon.result = None
                err = api_namespace + " " + str(exce)
                err_msg = customized_error_template(
                    ECustomizedError.INTERNAL) % err
                _logger.error(err_msg)
                respon.error_msg = err_msg
                return respon.json_response()

        return inner

    return decorator
