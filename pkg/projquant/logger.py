"""Logging utilities."""

import os
import sys
import logging

# Results go to stdout or --out files, logs always to stderr.
logging.basicConfig(format='%(asctime)s.%(msecs)06d [%(module)s@%(processName)s] %(levelname)s: %(message)s',
                    datefmt='%Y-%m-%d %H:%M:%SZ',
                    stream=sys.stderr,
                    level=logging.INFO)

_DEFAULT_LEVEL = 'INFO'


def _env_level():
    level = os.getenv('LOG_LEVEL', _DEFAULT_LEVEL).upper()
    if not isinstance(logging.getLevelName(level), int):
        logging.getLogger(__name__).warning('Unknown LOG_LEVEL %r, using %s', level, _DEFAULT_LEVEL)
        return _DEFAULT_LEVEL
    return level


def get_logger(name=None):
    """Returns a logger whose level follows the LOG_LEVEL environment variable."""
    logger = logging.getLogger(name)
    logger.setLevel(_env_level())
    return logger
