import logging
from pathlib import Path

import numpy as np
from aiofiles import open
from pydantic import TypeAdapter, ValidationError

from .dynamics import Config, as_config, check_length
from .errors import InvalidRange, InvalidSpec
from .graph import Graph
from .oracles import full_degree_config, millpond_config, qf_config
from .trials import random_config

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug

PRESETS: list[str] = ["full-degree", "millpond:v", "qf:v", "zero", "const:k", "random:lo..hi"]

_int_list = TypeAdapter(list[int])


def parse_range(spec: str) -> tuple[int, int]:
    """'lo..hi' -> (lo, hi)"""
    lo, sep, hi = spec.partition("..")
    try:
        if sep == "":
            raise ValueError("missing '..'")
        res: tuple[int, int] = int(lo), int(hi)
    except ValueError as err:
        raise InvalidSpec(f"invalid range '{spec}': {err}")
    if res[0] > res[1]:
        raise InvalidRange(f"lo > hi: {spec}")
    return res


def parse_preset(spec: str, g: Graph, seed: int = 0) -> Config:
    """Configuration from a preset name such as 'millpond:3' or 'random:1..200'"""
    name, _, arg = spec.partition(":")
    try:
        match name:
            case "full-degree":
                return full_degree_config(g)
            case "zero":
                return np.zeros(g.n, dtype=np.int64)
            case "const":
                return np.full(g.n, int(arg), dtype=np.int64)
            case "millpond":
                return millpond_config(g, int(arg))
            case "qf":
                return qf_config(g, int(arg))
            case "random":
                lo, hi = parse_range(arg)
                return random_config(g, lo, hi, seed)
    except ValueError as err:
        if isinstance(err, (InvalidSpec, InvalidRange)):
            raise
        raise InvalidSpec(f"invalid preset '{spec}': {err}")
    raise InvalidSpec(f"unknown preset: {spec}")


def parse_config_text(text: str) -> Config:
    """Whitespace-separated integers or a JSON array"""
    text = text.strip()
    try:
        if text.startswith("["):
            return as_config(_int_list.validate_json(text))
        return as_config(int(tok) for tok in text.split())
    except (ValueError, ValidationError) as err:
        raise InvalidSpec(f"malformed configuration: {err}")


async def read_config(filename: Path | str) -> Config:
    debug("reading configuration: %s", str(filename))
    async with open(filename, "r") as f:
        return parse_config_text(await f.read())


async def load_config(spec: str, g: Graph, seed: int = 0) -> Config:
    """Configuration from a preset or a file, checked against the graph"""
    c: Config
    if Path(spec).is_file():
        c = await read_config(spec)
    else:
        c = parse_preset(spec, g, seed)
    check_length(g, c)
    return c
