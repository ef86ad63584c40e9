########################################################
#
# Closed-form predictors and theorem-bound monitors
#
########################################################

import logging
from enum import StrEnum
from typing import Callable, Sequence

import networkx as nx
import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict

from .dynamics import Config, as_config, as_int64_array
from .errors import (
    BoundInapplicable,
    Disconnected,
    InvalidParams,
    InvalidSize,
    LengthMismatch,
    NotAStar,
    NotBipartite,
)
from .exportable import JSONExportable
from .graph import Family, Graph, LayerDecomposition, generate, twins
from .utils import ceil_div

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug


########################################################
#
# Initial configurations
#
########################################################


def full_degree_config(g: Graph) -> Config:
    """Every vertex holds its degree"""
    return g.degrees.copy()


def millpond_config(g: Graph, v: int) -> Config:
    """One chip at v, none elsewhere"""
    g.check_vertex(v)
    c: Config = np.zeros(g.n, dtype=np.int64)
    c[v] = 1
    return c


def qf_config(g: Graph, v: int) -> Config:
    """-deg(v) at v, one chip on each neighbour of v"""
    g.check_vertex(v)
    c: Config = np.zeros(g.n, dtype=np.int64)
    c[list(g.neighbours(v))] = 1
    c[v] = -g.degree(v)
    return c


########################################################
#
# Mill-pond and QF
#
########################################################


def _check_millpond_graph(d: LayerDecomposition, g: Graph) -> None:
    if sum(len(layer) for layer in d.layers) != g.n:
        raise Disconnected("layers do not cover the graph")
    if not nx.is_bipartite(g.to_networkx()):
        raise NotBipartite("mill-pond prediction needs a bipartite graph")


def millpond_predict(d: LayerDecomposition, g: Graph, t: int) -> Config:
    """Configuration at time t of the mill-pond started at d.source.

    The source holds 1 at even t and 1 - deg at odd t. A vertex x in layer
    i >= 1 holds 0 before time i, then deg_up(x) when t - i is even and
    -deg_down(x) when it is odd."""
    if t < 0:
        raise InvalidParams(f"time must be >= 0: {t}")
    _check_millpond_graph(d, g)
    v: int = d.source
    c: Config = np.zeros(g.n, dtype=np.int64)
    c[v] = 1 if t % 2 == 0 else 1 - g.degree(v)
    for i, layer in enumerate(d.layers[1:], start=1):
        if t < i:
            break
        for x in layer:
            c[x] = d.deg_up[x] if (t - i) % 2 == 0 else -d.deg_down[x]
    return c


def qf_predict(d: LayerDecomposition, g: Graph, t: int) -> Config:
    """QF(v) at time t: the mill-pond one step ahead with one chip fewer at v.

    Valid when every neighbour of v has a neighbour farther from v."""
    _check_millpond_graph(d, g)
    v: int = d.source
    if any(d.deg_down[x] == 0 for x in g.neighbours(v)):
        raise BoundInapplicable(f"a neighbour of {v} has no neighbour farther from {v}")
    c: Config = millpond_predict(d, g, t + 1)
    c[v] -= 1
    return c


########################################################
#
# Paths
#
########################################################


def infinite_path_word(t: int, length: int) -> list[int]:
    """First `length` values at time t of the full-degree configuration on the
    one-way infinite path: (13)^k 1 2 2 ... for t = 2k, 2 (13)^k 1 2 2 ... for
    t = 2k + 1"""
    if t < 0 or length < 0:
        raise InvalidParams(f"invalid time/length: {t}, {length}")
    k: int = t // 2
    head: list[int] = ([2] if t % 2 else []) + [1, 3] * k + [1]
    return (head + [2] * max(0, length - len(head)))[:length]


def path_table_word(n: int) -> tuple[int, list[int]]:
    """Time at which P_n from full degree reaches its period-2 cycle and the
    configuration there"""
    if n < 3:
        raise InvalidSize(f"path length must be >= 3: {n}")
    k, r = divmod(n - 3, 4)
    middle: list[int] = [1, 2, 1] if r % 2 == 0 else [1, 2, 2, 1]
    word: list[int] = [1, 3] * k + middle + [3, 1] * k
    if r >= 2:
        return 2 * k + 1, [2] + word + [2]
    return 2 * k, word


def _path_image(word: list[int]) -> list[int]:
    n: int = len(word)
    res: list[int] = list(word)
    for i in range(n):
        for j in (i - 1, i + 1):
            if 0 <= j < n:
                res[i] += (word[j] > word[i]) - (word[j] < word[i])
    return res


def path_full_degree_predict(n: int, t: int) -> Config:
    """Full-degree configuration on P_n at time t"""
    if t < 0:
        raise InvalidParams(f"time must be >= 0: {t}")
    T, word = path_table_word(n)
    if t <= T:
        ends: list[int] = infinite_path_word(t, n)
        return as_config(ends[min(i, n - 1 - i)] for i in range(n))
    if (t - T) % 2 == 0:
        return as_config(word)
    return as_config(_path_image(word))


########################################################
#
# Stars
#
########################################################


def star_centre(g: Graph) -> int:
    """Centre of a star. S_1 and S_2 have centre 0."""
    n: int = g.n
    if g.edge_count != n - 1 or not g.is_connected():
        raise NotAStar(f"{g!r} is not a star")
    if n <= 2:
        return 0
    centres: list[int] = [v for v in range(n) if g.degree(v) == n - 1]
    if len(centres) != 1:
        raise NotAStar(f"{g!r} is not a star")
    return centres[0]


def star_preperiod_bound(g: Graph, c0: Config) -> int:
    """Upper bound on the pre-period of any configuration on a star:
    ceil(max(0, c(v) - c(l_max), c(l_min) - c(v)) / n) + 2 * d_0, where
    d_0 is the largest difference between two leaves"""
    c0 = as_config(c0)
    if len(c0) != g.n:
        raise LengthMismatch(f"configuration length {len(c0)} != {g.n}")
    v: int = star_centre(g)
    leaves: list[int] = [int(c0[x]) for x in range(g.n) if x != v]
    if len(leaves) == 0:
        return 0
    cv: int = int(c0[v])
    hi, lo = max(leaves), min(leaves)
    return ceil_div(max(0, cv - hi, lo - cv), g.n) + 2 * (hi - lo)


########################################################
#
# Two-valued complete and complete bipartite graphs
#
########################################################


def two_group_predict(
    size_a: int, size_b: int, alpha: int, beta: int, t: int
) -> tuple[int, int]:
    """Values (a_t, b_t) of two uniform groups where every vertex of one group
    is adjacent to every vertex of the other.

    While one group is strictly poorer it gains the other group's size and the
    richer one loses the poorer one's size, closing the gap by size_a + size_b.
    Once the order flips the values alternate with period 2; a zero gap
    freezes."""
    if size_a < 0 or size_b < 0 or t < 0:
        raise InvalidParams(f"invalid group sizes or time: {size_a}, {size_b}, {t}")
    if size_a == 0 or size_b == 0 or alpha == beta:
        return alpha, beta
    sign: int = 1 if alpha < beta else -1
    gap: int = abs(beta - alpha)
    size: int = size_a + size_b
    s: int = ceil_div(gap, size)
    if t > s:
        if gap == s * size or (t - s) % 2 == 0:
            t = s
        else:
            t = s - 1
    return alpha + sign * size_b * t, beta - sign * size_a * t


def complete_two_value_predict(
    n: int, d: int, alpha: int, beta: int, t: int
) -> tuple[int, int]:
    """K_n with d vertices at alpha and n - d at beta"""
    if not 1 <= d <= n:
        raise InvalidParams(f"need 1 <= d <= n: d={d}, n={n}")
    return two_group_predict(d, n - d, alpha, beta, t)


def complete_bipartite_two_value_predict(
    m: int, n: int, alpha: int, beta: int, t: int
) -> tuple[int, int]:
    """K_{m,n} with alpha on the m side and beta on the n side"""
    if m < 1 or n < 1:
        raise InvalidParams(f"need m, n >= 1: {m}, {n}")
    return two_group_predict(m, n, alpha, beta, t)


########################################################
#
# Bound monitors
#
########################################################


class BoundId(StrEnum):
    deg2_edge = "deg2_edge"
    twin_pair = "twin_pair"
    twin_lock = "twin_lock"
    wheel_rim = "wheel_rim"
    wheel_hub = "wheel_hub"
    edge_difference = "edge_difference"


class BoundViolation(BaseModel):
    time: int
    u: int
    v: int
    observed: int
    bound: int

    model_config = ConfigDict(frozen=True)


class BoundReport(JSONExportable):
    _schema_name = "bound"

    bound_id: BoundId
    holds: bool = True
    first_violation: BoundViolation | None = None
    steps: int
    pairs: int
    max_observed: int | None = None


def _pairs_array(
    pairs: Sequence[tuple[int, int]],
) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]]:
    us = np.array([p[0] for p in pairs], dtype=np.intp)
    vs = np.array([p[1] for p in pairs], dtype=np.intp)
    return us, vs


def _report(
    bound_id: BoundId,
    traj: npt.NDArray[np.int64],
    us: npt.NDArray[np.intp],
    vs: npt.NDArray[np.intp],
    violated: npt.NDArray[np.bool_],
    observed: npt.NDArray[np.int64],
    bound: npt.NDArray[np.int64],
    offset: int = 0,
) -> BoundReport:
    """violated/observed/bound are (time, pair) arrays; offset is the time
    of row 0"""
    res = BoundReport(
        bound_id=bound_id,
        steps=len(traj) - 1,
        pairs=len(us),
        max_observed=int(np.abs(traj[:, us] - traj[:, vs]).max()) if len(us) > 0 else 0,
    )
    hits = np.argwhere(violated)
    if len(hits) > 0:
        t, p = (int(x) for x in hits[0])
        res.first_violation = BoundViolation(
            time=t + offset,
            u=int(us[p]),
            v=int(vs[p]),
            observed=int(observed[t, p]),
            bound=int(bound[t, p]),
        )
        res.holds = False
        message("%s violated: %s", bound_id, str(res.first_violation))
    return res


def _wheel_rim(g: Graph) -> list[tuple[int, int]]:
    n: int = g.n
    if n < 4 or g != generate(Family.wheel, n):
        raise BoundInapplicable("wheel bounds need generate(wheel, n): hub 0, rim 1..n-1")
    return [(i, i + 1) for i in range(1, n - 1)] + [(n - 1, 1)]


def _stepwise(
    bound_id: BoundId,
    arr: npt.NDArray[np.int64],
    pairs: list[tuple[int, int]],
    rule: Callable[[npt.NDArray[np.int64]], npt.NDArray[np.int64]],
) -> BoundReport:
    """|d_{t+1}| <= rule(|d_t|) on every pair"""
    us, vs = _pairs_array(pairs)
    diff = np.abs(arr[:, us] - arr[:, vs])
    bound = rule(diff[:-1]).astype(np.int64)
    return _report(bound_id, arr, us, vs, diff[1:] > bound, diff[1:], bound, offset=1)


def check_bound(
    bound_id: BoundId | str, g: Graph, traj: Sequence[Config] | npt.NDArray[np.int64]
) -> BoundReport:
    """Check a theorem bound along a trajectory from the firing engine"""
    bound_id = BoundId(bound_id)
    arr: npt.NDArray[np.int64] = as_int64_array(np.asarray(traj))
    if arr.ndim != 2 or arr.shape[1] != g.n:
        raise LengthMismatch(f"trajectory shape {arr.shape} does not match {g.n} vertices")
    if len(arr) == 0:
        raise InvalidParams("empty trajectory")

    pairs: list[tuple[int, int]]
    match bound_id:
        case BoundId.deg2_edge:
            # |d_{t+1}| <= max(3, |d_t|) on edges uv with deg(u) = 2, deg(v) <= 2
            pairs = [
                (u, v)
                for u, v in g.edges()
                if max(g.degree(u), g.degree(v)) == 2
            ]
            if len(pairs) == 0:
                raise BoundInapplicable("no edge between vertices of degree <= 2")
            return _stepwise(bound_id, arr, pairs, lambda d: np.maximum(3, d))

        case BoundId.wheel_rim:
            # |d_t| < 3 implies |d_{t+1}| <= 6, otherwise |d_{t+1}| <= |d_t|
            pairs = _wheel_rim(g)
            return _stepwise(bound_id, arr, pairs, lambda d: np.where(d < 3, 6, d))

        case BoundId.twin_pair:
            pairs = [(tw.u, tw.v) for tw in twins(g)]
            if len(pairs) == 0:
                raise BoundInapplicable("graph has no twins")
            us, vs = _pairs_array(pairs)
            diff = np.abs(arr[:, us] - arr[:, vs])
            cap = np.maximum(diff[0], 2 * g.degrees[us])
            bound = np.broadcast_to(cap, diff.shape)
            return _report(bound_id, arr, us, vs, diff > bound, diff, bound)

        case BoundId.twin_lock:
            pairs = [(tw.u, tw.v) for tw in twins(g)]
            if len(pairs) == 0:
                raise BoundInapplicable("graph has no twins")
            us, vs = _pairs_array(pairs)
            diff = np.abs(arr[:, us] - arr[:, vs])
            # equal twins stay equal at the next step
            violated = (diff[:-1] == 0) & (diff[1:] != 0)
            return _report(
                bound_id, arr, us, vs, violated, diff[1:], np.zeros_like(diff[1:]), offset=1
            )

        case BoundId.wheel_hub:
            rim = _wheel_rim(g)
            n: int = g.n
            c0 = arr[0]
            radii: list[int] = [max(abs(int(c0[u]) - int(c0[v])), 6) for u, v in rim]
            hub_radius: int = max(
                n + 2 + sum(radii), max(abs(int(c0[0]) - int(c0[x])) for x in range(1, n))
            )
            pairs = [(0, x) for x in range(1, n)]
            us, vs = _pairs_array(pairs)
            diff = np.abs(arr[:, us] - arr[:, vs])
            bound = np.full(diff.shape, hub_radius, dtype=np.int64)
            return _report(bound_id, arr, us, vs, diff > bound, diff, bound)

        case BoundId.edge_difference:
            # informational: records the largest edge difference
            us, vs = g.edge_arrays
            diff = np.abs(arr[:, us] - arr[:, vs])
            never = np.zeros(diff.shape, dtype=np.bool_)
            return _report(bound_id, arr, us, vs, never, diff, diff)
    raise BoundInapplicable(f"unknown bound: {bound_id}")
