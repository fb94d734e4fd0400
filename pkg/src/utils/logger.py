import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from colorama import Fore, Style, init

# Initialize Colorama
init()

# Parent logger for the whole package; modules log via "stego.<area>"
PACKAGE_LOGGER = "stego"

LOG_FORMAT = '%(asctime)s [%(name)s] [%(levelname)s] %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
MAX_LOG_BYTES = 10 * 1024 * 1024  # 10MB
LOG_BACKUPS = 5


def _file_handler(log_file):
    log_dir = os.path.dirname(log_file)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
    # Rotating File Handler (UTF-8 Enforced)
    return RotatingFileHandler(log_file, maxBytes=MAX_LOG_BYTES, backupCount=LOG_BACKUPS, encoding='utf-8')


class LogManager:
    _instances = {}

    @staticmethod
    def get_logger(name, log_file=None, level=logging.INFO, console=True):
        """
        Cached logger with an optional rotating file and a stderr console handler.
        stdout stays free for command results.
        """
        if name in LogManager._instances:
            return LogManager._instances[name]

        logger = logging.getLogger(name)
        logger.setLevel(level)
        logger.propagate = False

        handlers = []
        if log_file:
            handlers.append(_file_handler(log_file))
        if console:
            handlers.append(logging.StreamHandler(sys.stderr))

        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
        for handler in handlers:
            handler.setFormatter(formatter)
            handler.setLevel(level)
            logger.addHandler(handler)

        LogManager._instances[name] = logger
        return logger

    @staticmethod
    def configure(config):
        """Apply the `logging` section of the app config to the package logger."""
        log_conf = config.get('logging', {})
        level_name = str(log_conf.get('level', 'INFO')).upper()
        level = getattr(logging, level_name, logging.INFO)

        # Re-configuring replaces the cached handlers
        LogManager.reset(PACKAGE_LOGGER)
        return LogManager.get_logger(
            PACKAGE_LOGGER,
            log_file=log_conf.get('log_file') or None,
            level=level,
            console=log_conf.get('console', True)
        )

    @staticmethod
    def reset(name):
        """Drop the cached logger and close its handlers."""
        logger = LogManager._instances.pop(name, None)
        if logger is None:
            return
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
            handler.close()


def status(stream, msg, color=Fore.WHITE):
    """Colour-coded one-line status message for the CLI (stderr)."""
    print(f"{color}{msg}{Style.RESET_ALL}", file=stream)
