import sys
from datetime import datetime

from loguru import logger as _logger

from app.config import PROJECT_ROOT, config


_print_level = config.logging.print_level


def define_log_level(
    print_level: str = "INFO",
    logfile_level: str = "DEBUG",
    name: str = None,
    to_file: bool = True,
):
    """Route loguru to stderr and, optionally, to a dated file under logs/."""
    global _print_level
    _print_level = print_level

    formatted_date = datetime.now().strftime("%Y%m%d%H%M%S")
    log_name = f"{name}_{formatted_date}" if name else formatted_date

    _logger.remove()
    _logger.add(sys.stderr, level=print_level, format=config.logging.format)
    if to_file:
        _logger.add(
            PROJECT_ROOT / config.logging.directory / f"{log_name}.log",
            level=logfile_level,
        )
    return _logger


def set_print_level(print_level: str):
    """Re-route stderr at a new level, keeping the configured file sink."""
    return define_log_level(
        print_level=print_level,
        logfile_level=config.logging.logfile_level,
        name=config.logging.name,
        to_file=config.logging.to_file,
    )


logger = define_log_level(
    print_level=config.logging.print_level,
    logfile_level=config.logging.logfile_level,
    name=config.logging.name,
    to_file=config.logging.to_file,
)
