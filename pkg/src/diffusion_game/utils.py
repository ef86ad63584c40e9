import logging
from os import cpu_count, getenv
from pathlib import Path

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug

# Constants
ENV_THREADS: str = "DIFFUSE_THREADS"


##############################################
#
## Functions
#
##############################################


def str2path(filename: str | Path, suffix: str | None = None) -> Path:
    """convert filename (str) to pathlib.Path"""
    if isinstance(filename, str):
        filename = Path(filename)
    if suffix is not None and not filename.name.lower().endswith(suffix):
        filename = filename.with_suffix(suffix)
    return filename


def ceil_div(a: int, b: int) -> int:
    """Integer ceiling of a / b for b > 0"""
    return -(-a // b)


def env_int(name: str, default: int) -> int:
    """Read a positive integer from the environment, fall back to default"""
    value: str | None = getenv(name)
    if value is None or value == "":
        return default
    try:
        if (res := int(value)) >= 1:
            return res
        message(f"{name}={value} is not positive, using default {default}")
    except ValueError:
        message(f"{name}={value} is not an integer, using default {default}")
    return default


def worker_count(requested: int | None = None) -> int:
    """Worker processes to use: requested, capped by DIFFUSE_THREADS"""
    cap: int = env_int(ENV_THREADS, cpu_count() or 1)
    if requested is None:
        return cap
    return max(1, min(requested, cap))
