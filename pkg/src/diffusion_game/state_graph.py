########################################################
#
# The configuration digraph over a bounded window
#
########################################################

import logging
from collections import Counter
from math import comb
from typing import Any, ClassVar, Iterator

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, model_validator

from .dynamics import Config, as_config, check_length, fire_many
from .errors import EmptyWindow, InvalidRange, WindowTooLarge
from .exportable import CSVExportable, JSONExportable, join_ints
from .graph import Graph

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug

DEFAULT_WINDOW_CAP: int = 10**7

ESCAPED: int = -1


class ConfigWindow(BaseModel):
    """Configurations with chip total `total` and every entry in [lo, hi].
    hi defaults to max(total, lo)."""

    total: int
    lo: int = 0
    hi: int

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def _default_hi(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("hi") is None:
            return {**data, "hi": max(data.get("total", 0), data.get("lo", 0))}
        return data

    def is_empty(self, n: int) -> bool:
        return not n * self.lo <= self.total <= n * self.hi

    def contains(self, c: Config) -> bool:
        return (
            sum(c.tolist()) == self.total
            and bool(np.all(c >= self.lo))
            and bool(np.all(c <= self.hi))
        )


def window_size(n: int, w: ConfigWindow) -> int:
    """Exact number of configurations in the window (bounded compositions)"""
    if w.lo > w.hi:
        raise InvalidRange(f"lo > hi: {w.lo} > {w.hi}")
    if w.is_empty(n):
        return 0
    s: int = w.total - n * w.lo
    span: int = w.hi - w.lo + 1
    # inclusion-exclusion over the parts exceeding the span
    return sum(
        (-1) ** j * comb(n, j) * comb(s - j * span + n - 1, n - 1)
        for j in range(n + 1)
        if s - j * span >= 0
    )


def shift_window(w: ConfigWindow, k: int, n: int) -> ConfigWindow:
    """The window of shift(c, k) for every c in w"""
    return ConfigWindow(total=w.total + k * n, lo=w.lo + k, hi=w.hi + k)


def _check_window(n: int, w: ConfigWindow, cap: int) -> int:
    size: int = window_size(n, w)
    if size == 0:
        raise EmptyWindow(
            f"no configurations of {n} entries in [{w.lo}, {w.hi}] sum to {w.total}"
        )
    if size > cap:
        raise WindowTooLarge(f"window has {size} configurations, cap is {cap}")
    return size


def enumerate_window(
    g: Graph, w: ConfigWindow, cap: int = DEFAULT_WINDOW_CAP
) -> npt.NDArray[np.int64]:
    """All configurations in the window as rows, in lexicographic order"""
    n: int = g.n
    size: int = _check_window(n, w, cap)
    rows: npt.NDArray[np.int64] = np.zeros((1, 0), dtype=np.int64)
    sums: npt.NDArray[np.int64] = np.zeros(1, dtype=np.int64)
    for i in range(n - 1):
        left: int = n - i - 1  # entries after this one
        rest = w.total - sums
        x_min = np.maximum(w.lo, rest - left * w.hi)
        x_max = np.minimum(w.hi, rest - left * w.lo)
        counts = np.maximum(x_max - x_min + 1, 0)
        parent = np.repeat(np.arange(len(rows)), counts)
        offsets = np.arange(int(counts.sum())) - np.repeat(np.cumsum(counts) - counts, counts)
        x = x_min[parent] + offsets
        rows = np.column_stack([rows[parent], x])
        sums = sums[parent] + x
    rows = np.column_stack([rows, w.total - sums]).astype(np.int64)
    debug("enumerated %d configurations", len(rows))
    assert len(rows) == size, "window enumeration count mismatch"
    return rows


class CycleEntry(BaseModel):
    entry: list[int]
    length: int


class StateGraphReport(JSONExportable):
    """Functional digraph over a window. successors[i] is the index of the
    image of node i or -1 when the image leaves the window."""

    _schema_name = "stategraph"
    _exclude_export_fields = {"successors"}

    n: int
    window: ConfigWindow
    node_count: int
    escaped_count: int
    in_degree_histogram: dict[int, int]
    cycles: list[CycleEntry]
    cycle_lengths: dict[int, int]
    conjecture_holds: bool
    successors: list[int] | None = None


def _find_cycles(succ: npt.NDArray[np.int64]) -> list[tuple[int, int]]:
    """(smallest member, length) of every cycle of a functional graph"""
    N: int = len(succ)
    colour: npt.NDArray[np.int8] = np.zeros(N, dtype=np.int8)  # 0 new, 1 on path, 2 done
    cycles: list[tuple[int, int]] = list()
    for start in range(N):
        if colour[start] != 0:
            continue
        path: list[int] = list()
        x: int = start
        while x != ESCAPED and colour[x] == 0:
            colour[x] = 1
            path.append(x)
            x = int(succ[x])
        if x != ESCAPED and colour[x] == 1:
            members: list[int] = path[path.index(x) :]
            cycles.append((min(members), len(members)))
        colour[path] = 2
    return sorted(cycles)


def build_state_graph(
    g: Graph,
    w: ConfigWindow,
    cap: int = DEFAULT_WINDOW_CAP,
    keep_successors: bool = False,
) -> StateGraphReport:
    nodes: npt.NDArray[np.int64] = enumerate_window(g, w, cap)
    images: npt.NDArray[np.int64] = fire_many(g, nodes)
    inside: npt.NDArray[np.bool_] = np.all((images >= w.lo) & (images <= w.hi), axis=1)

    index: dict[bytes, int] = {row.tobytes(): i for i, row in enumerate(nodes)}
    succ: npt.NDArray[np.int64] = np.full(len(nodes), ESCAPED, dtype=np.int64)
    for i in np.flatnonzero(inside):
        succ[i] = index[images[i].tobytes()]

    in_degree = np.bincount(succ[succ != ESCAPED], minlength=len(nodes))
    cycles: list[tuple[int, int]] = _find_cycles(succ)
    lengths: Counter[int] = Counter(length for _, length in cycles)
    holds: bool = all(length <= 2 for length in lengths)
    verbose(
        "state graph: %d nodes, %d escaped, %d cycles",
        len(nodes),
        int((~inside).sum()),
        len(cycles),
    )
    return StateGraphReport(
        n=g.n,
        window=w,
        node_count=len(nodes),
        escaped_count=int((~inside).sum()),
        in_degree_histogram=dict(sorted(Counter(in_degree.tolist()).items())),
        cycles=[CycleEntry(entry=nodes[i].tolist(), length=k) for i, k in cycles],
        cycle_lengths=dict(sorted(lengths.items())),
        conjecture_holds=holds,
        successors=succ.tolist() if keep_successors else None,
    )


def parents_of(
    g: Graph, c: Config, w: ConfigWindow, cap: int = DEFAULT_WINDOW_CAP
) -> set[tuple[int, ...]]:
    """In-window configurations whose image is c"""
    c = as_config(c)
    check_length(g, c)
    nodes: npt.NDArray[np.int64] = enumerate_window(g, w, cap)
    hit: npt.NDArray[np.bool_] = np.all(fire_many(g, nodes) == c, axis=1)
    return {tuple(row) for row in nodes[hit].tolist()}


class CycleCensus(JSONExportable):
    _schema_name = "census"

    lengths: dict[int, int]
    cycles: int
    escaped_count: int
    conjecture_holds: bool


def cycle_census(r: StateGraphReport) -> CycleCensus:
    """Every cycle of length 1 or 2 supports the tightness conjecture on the
    window. Escaped nodes are inconclusive and only counted."""
    lengths: Counter[int] = Counter(entry.length for entry in r.cycles)
    holds: bool = all(length in (1, 2) for length in lengths)
    if not holds:
        for entry in r.cycles:
            if entry.length > 2:
                message("cycle of length %d through %s", entry.length, str(entry.entry))
    return CycleCensus(
        lengths=dict(sorted(lengths.items())),
        cycles=len(r.cycles),
        escaped_count=r.escaped_count,
        conjecture_holds=holds,
    )


class SuccessorRow(CSVExportable):
    """config -> config; target empty when the image leaves the window"""

    source: list[int]
    target: list[int] | None
    escaped: bool

    _csv_custom_writers: ClassVar[dict[str, Any]] = {
        "source": join_ints,
        "target": lambda v: "" if v is None else join_ints(v),
    }


def successor_rows(g: Graph, r: StateGraphReport) -> Iterator[SuccessorRow]:
    """Successor dump of a report built with keep_successors=True"""
    if r.successors is None:
        raise ValueError("report has no successors, build with keep_successors=True")
    nodes: list[list[int]] = enumerate_window(g, r.window, max(r.node_count, 1)).tolist()
    for src, dst in zip(nodes, r.successors):
        if dst == ESCAPED:
            yield SuccessorRow(source=src, target=None, escaped=True)
        else:
            yield SuccessorRow(source=src, target=nodes[dst], escaped=False)
