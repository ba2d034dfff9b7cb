import logging
import sys

from pythonjsonlogger import jsonlogger

from config import ConfigClass

_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'


class LoggerFactory:
    '''
    Build namespaced loggers emitting one JSON object per record on stderr.
    '''

    def __init__(self, name: str, level: str = None):
        self.name = name
        self.level = (level or ConfigClass.LOG_LEVEL).upper()

    def get_logger(self) -> logging.Logger:
        logger = logging.getLogger(self.name)
        if not getattr(logger, '_gathering_configured', False):
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(jsonlogger.JsonFormatter(_FORMAT))
            logger.addHandler(handler)
            logger.propagate = False
            logger._gathering_configured = True
        logger.setLevel(self.level)
        return logger
