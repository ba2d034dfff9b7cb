from pydantic import BaseSettings
from pydantic import Extra


class Settings(BaseSettings):
    """Store simulator and service configuration settings."""

    APP_NAME: str = 'service_gathering'
    PORT: int = 5066
    HOST: str = '127.0.0.1'
    LOG_LEVEL: str = 'INFO'
    env: str = ''

    # fallback seed when neither --seed nor a config entry provides one
    GDG_SEED: int = 0

    HORIZON_FACTOR: int = 4
    BATCH_WORKERS: int = 4
    ADVERSARY_HORIZON: int = 10000

    AC_BOUND_C1: int = 16
    AC_BOUND_C2: int = 3
    AC_BOUND_C3: int = 12
    BRE_BOUND_C1: int = 4
    BRE_BOUND_C2: int = 3
    BRE_BOUND_C3: int = 8

    def __init__(self):
        super().__init__()
        self.AC_BOUND_CONSTANTS = (self.AC_BOUND_C1, self.AC_BOUND_C2, self.AC_BOUND_C3)
        self.BRE_BOUND_CONSTANTS = (self.BRE_BOUND_C1, self.BRE_BOUND_C2, self.BRE_BOUND_C3)

    class Config:
        env_file = '.env'
        env_file_encoding = 'utf-8'
        extra = Extra.allow


ConfigClass = Settings()
