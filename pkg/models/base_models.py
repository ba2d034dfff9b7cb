from enum import Enum

from fastapi.responses import JSONResponse
from pydantic import BaseModel


class EAPIResponseCode(Enum):
    success = 200
    internal_error = 500
    bad_request = 400
    not_found = 404


class APIResponse(BaseModel):
    code: EAPIResponseCode = EAPIResponseCode.success
    error_msg: str = ""
    total: int = 1
    result = []

    def json_response(self):
        data = self.dict()
        data["code"] = self.code.value
        return JSONResponse(status_code=self.code.value, content=data)
