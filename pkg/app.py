import uvicorn
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from api.routes import api_router
from config import ConfigClass

app = FastAPI(
    title="Gathering Simulator",
    description="GDG gathering on dynamic rings: ring generation, simulation, checking and the adversary",
    docs_url="/v1/api-doc",
    version="0.1.0"
)
app.add_middleware(
    CORSMiddleware,
    allow_origins="*",
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(api_router, prefix="/v1")

if __name__ == "__main__":
    uvicorn.run("app:app", host=ConfigClass.HOST, port=ConfigClass.PORT, log_level="info", reload=True)
