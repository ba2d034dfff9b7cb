from fastapi import APIRouter

from api.api_rings import rings
from api.api_simulations import simulations

api_router = APIRouter()
api_router.include_router(rings.router, tags=['rings'])
api_router.include_router(simulations.router, tags=['simulations'])
