import logging

ROOT_LOGGER_NAME = "patternpype"


class LoggerMixin:
    """Gives a class the ``cls.logger()`` accessor used across the package.

    Loggers are named after the defining module and class so that the usual
    ``logging`` hierarchy (``patternpype.runtime.worker.Worker``, ...) can be
    filtered per component.
    """

    _logger: logging.Logger | None = None

    @classmethod
    def logger(cls) -> logging.Logger:
        # Looked up on the class itself so subclasses get their own logger.
        logger = cls.__dict__.get("_logger")
        if logger is None:
            logger = logging.getLogger(f"{cls.__module__}.{cls.__qualname__}")
            cls._logger = logger
        return logger


def configure_logging(level: str | int = logging.WARNING) -> None:
    """Send package logs to stderr at the given level.

    Tables are written to stdout, so records must never share that stream.
    """
    handler = logging.StreamHandler()
    handler.setFormatter(
        logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")
    )
    root = logging.getLogger(ROOT_LOGGER_NAME)
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False
