########################################################
#
# The firing rule and trajectories
#
########################################################

import logging
import operator
from typing import Any, ClassVar, Iterable, NamedTuple, Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict

from .errors import IntegerOverflow, InvalidParams, LengthMismatch, NotAnInteger
from .exportable import CSVExportable, JSONExportable, join_ints
from .graph import Graph

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug

Config = npt.NDArray[np.int64]

INT64_MAX: int = int(np.iinfo(np.int64).max)
INT64_MIN: int = int(np.iinfo(np.int64).min)


class DeltaVector(NamedTuple):
    """Counts of strictly richer (plus) and strictly poorer (minus) neighbours"""

    delta_plus: npt.NDArray[np.int64]
    delta_minus: npt.NDArray[np.int64]

    @property
    def delta(self) -> npt.NDArray[np.int64]:
        return self.delta_plus - self.delta_minus


def as_int64_array(arr: npt.NDArray[Any]) -> npt.NDArray[np.int64]:
    """Copy of an integer or bool array as int64. Floats are refused and
    unsigned values above INT64_MAX raise instead of wrapping."""
    if arr.size == 0:
        return arr.astype(np.int64)
    match arr.dtype.kind:
        case "b" | "i":
            return arr.astype(np.int64)
        case "u":
            if int(arr.max()) > INT64_MAX:
                raise IntegerOverflow(f"chip count {int(arr.max())} exceeds int64")
            return arr.astype(np.int64)
        case "O":
            try:
                return np.array(_index_list(arr.tolist()), dtype=np.int64)
            except OverflowError as err:
                raise IntegerOverflow(f"chip count outside int64 range: {err}")
    raise NotAnInteger(f"chip counts must be integers, got dtype {arr.dtype}")


def _index_list(values: Any) -> Any:
    if isinstance(values, (list, tuple, np.ndarray)):
        return [_index_list(v) for v in values]
    try:
        return operator.index(values)
    except TypeError:
        raise NotAnInteger(f"chip count is not an integer: {values!r}")


def as_config(values: Iterable[int] | Config) -> Config:
    """Validated conversion into a 1-D int64 vector"""
    res: Config
    try:
        if isinstance(values, np.ndarray):
            res = as_int64_array(values)
        else:
            res = np.array(_index_list(list(values)), dtype=np.int64)
    except OverflowError as err:
        if isinstance(err, IntegerOverflow):
            raise
        raise IntegerOverflow(f"chip count outside int64 range: {err}")
    except ValueError as err:
        # ragged nesting
        raise LengthMismatch(f"configuration must be a vector: {err}")
    if res.ndim != 1:
        raise LengthMismatch(f"configuration must be a vector, got shape {res.shape}")
    return res


def check_length(g: Graph, c: Config) -> None:
    if len(c) != g.n:
        raise LengthMismatch(f"configuration length {len(c)} != vertex count {g.n}")


def _check_headroom(g: Graph, c: npt.NDArray[np.int64]) -> None:
    """A firing changes each entry by at most the max degree"""
    if c.size == 0:
        return
    dmax: int = int(g.degrees.max())
    if int(c.max()) > INT64_MAX - dmax or int(c.min()) < INT64_MIN + dmax:
        raise IntegerOverflow("next firing could leave the int64 range")


def total(c: Config) -> int:
    """Chip total as an exact Python int"""
    return sum(c.tolist())


def delta(g: Graph, c: Config) -> DeltaVector:
    c = as_config(c)
    check_length(g, c)
    src, dst = g.arcs
    richer: npt.NDArray[np.bool_] = c[dst] > c[src]
    poorer: npt.NDArray[np.bool_] = c[dst] < c[src]
    return DeltaVector(
        delta_plus=np.bincount(src[richer], minlength=g.n).astype(np.int64),
        delta_minus=np.bincount(src[poorer], minlength=g.n).astype(np.int64),
    )


def fire(g: Graph, c: Config) -> Config:
    """One synchronous firing: every vertex sends a chip to each strictly poorer
    neighbour and receives one from each strictly richer neighbour"""
    c = as_config(c)
    check_length(g, c)
    _check_headroom(g, c)
    d: npt.NDArray[np.int64] = delta(g, c).delta
    if int(d.sum()) != 0:
        raise RuntimeError("chip total not conserved")
    return c + d


def fire_many(g: Graph, configs: npt.NDArray[np.int64]) -> npt.NDArray[np.int64]:
    """Fire every row of a (k, n) array of configurations"""
    configs = as_int64_array(np.asarray(configs))
    if configs.ndim != 2 or configs.shape[1] != g.n:
        raise LengthMismatch(f"expected shape (k, {g.n}), got {configs.shape}")
    _check_headroom(g, configs)
    res: npt.NDArray[np.int64] = configs.copy()
    src, dst = g.arcs
    for v, u in zip(src, dst):
        res[:, v] += configs[:, u] > configs[:, v]
        res[:, v] -= configs[:, u] < configs[:, v]
    return res


def trajectory(g: Graph, c0: Config, steps: int) -> list[Config]:
    """[c_0, c_1, ..., c_steps]"""
    if steps < 0:
        raise InvalidParams(f"steps must be >= 0: {steps}")
    c: Config = as_config(c0)
    check_length(g, c)
    res: list[Config] = [c]
    for _ in range(steps):
        c = fire(g, c)
        res.append(c)
    return res


def shift(c: Config, k: int) -> Config:
    """Add k chips to every vertex"""
    c = as_config(c)
    if c.size > 0 and (int(c.max()) + k > INT64_MAX or int(c.min()) + k < INT64_MIN):
        raise IntegerOverflow(f"shift by {k} leaves the int64 range")
    return c + np.int64(k)


########################################################
#
# Trajectory monitors and reports
#
########################################################


class TrajectoryBounds(BaseModel):
    """Running extremes along a trajectory"""

    steps: int
    max_values: list[int]
    min_values: list[int]
    max_edge_difference: int

    model_config = ConfigDict(frozen=True)


def bound_monitor(g: Graph, traj: Sequence[Config]) -> TrajectoryBounds:
    """Per-vertex max/min and the max |c(u) - c(v)| over edges and time"""
    if len(traj) == 0:
        raise InvalidParams("empty trajectory")
    arr: npt.NDArray[np.int64] = np.vstack([as_config(c) for c in traj])
    if arr.shape[1] != g.n:
        raise LengthMismatch(f"trajectory width {arr.shape[1]} != vertex count {g.n}")
    eu, ev = g.edge_arrays
    diff: int = int(np.abs(arr[:, eu] - arr[:, ev]).max()) if len(eu) > 0 else 0
    return TrajectoryBounds(
        steps=len(traj) - 1,
        max_values=arr.max(axis=0).tolist(),
        min_values=arr.min(axis=0).tolist(),
        max_edge_difference=diff,
    )


class TrajectoryStep(CSVExportable):
    """CSV row of a trajectory"""

    step: int
    total: int
    config: list[int]

    _csv_custom_writers: ClassVar[dict[str, Any]] = {"config": join_ints}


class SimulationReport(JSONExportable):
    _schema_name = "simulation"

    graph: str
    n: int
    steps: int
    total: int
    initial: list[int]
    final: list[int]
    bounds: TrajectoryBounds
    trajectory: list[list[int]] | None = None

    def trajectory_rows(self) -> list[TrajectoryStep]:
        rows: list[tuple[int, list[int]]]
        if self.trajectory is None:
            rows = [(0, self.initial), (self.steps, self.final)]
        else:
            rows = list(enumerate(self.trajectory))
        return [TrajectoryStep(step=t, total=sum(c), config=c) for t, c in rows]


def simulate(
    g: Graph, c0: Config, steps: int, graph: str = "", emit_trajectory: bool = False
) -> SimulationReport:
    traj: list[Config] = trajectory(g, c0, steps)
    verbose("simulated %d steps on %s", steps, graph or repr(g))
    return SimulationReport(
        graph=graph,
        n=g.n,
        steps=steps,
        total=total(traj[0]),
        initial=traj[0].tolist(),
        final=traj[-1].tolist(),
        bounds=bound_monitor(g, traj),
        trajectory=[c.tolist() for c in traj] if emit_trajectory else None,
    )
