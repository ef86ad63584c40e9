########################################################
#
# Graph(), family generators and structural metrics
#
########################################################

import logging
from enum import StrEnum
from itertools import combinations
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import networkx as nx
import numpy as np
import numpy.typing as npt
from aiofiles import open
from pydantic import BaseModel, ConfigDict

from .errors import (
    Disconnected,
    DuplicateEdge,
    IndexOutOfRange,
    InvalidSize,
    InvalidSpec,
    SelfLoop,
)
from .exportable import JSONExportable

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug


class Family(StrEnum):
    path = "path"
    cycle = "cycle"
    wheel = "wheel"
    complete = "complete"
    complete_bipartite = "complete_bipartite"
    star = "star"
    grid = "grid"
    clique_with_pendants = "clique_with_pendants"


# short names accepted in CLI generator specs
SPEC_ALIASES: dict[str, Family] = {
    "path": Family.path,
    "cycle": Family.cycle,
    "wheel": Family.wheel,
    "complete": Family.complete,
    "kn": Family.complete,
    "kbip": Family.complete_bipartite,
    "kmn": Family.complete_bipartite,
    "star": Family.star,
    "grid": Family.grid,
    "kpend": Family.clique_with_pendants,
}


class Graph:
    """Undirected simple graph on vertices 0..n-1.

    Immutable after construction. Adjacency lists are sorted."""

    __slots__ = ("_n", "_adj", "_degrees", "_src", "_dst", "_edges", "_eu", "_ev", "_nx")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]):
        if n < 1:
            raise InvalidSize(f"vertex count must be >= 1: {n}")
        if len(adjacency) != n:
            raise InvalidSize(f"adjacency has {len(adjacency)} lists, expected {n}")
        adj: list[tuple[int, ...]] = list()
        for v, nbrs in enumerate(adjacency):
            row: tuple[int, ...] = tuple(sorted(nbrs))
            for u in row:
                if not 0 <= u < n:
                    raise IndexOutOfRange(f"neighbour {u} of {v} not in [0, {n})")
                if u == v:
                    raise SelfLoop(f"self-loop at {v}")
            if len(set(row)) != len(row):
                raise DuplicateEdge(f"duplicate neighbour in adjacency of {v}")
            adj.append(row)
        for v, row in enumerate(adj):
            for u in row:
                if v not in adj[u]:
                    raise InvalidSpec(f"adjacency not symmetric: {v}-{u}")

        self._n: int = n
        self._adj: tuple[tuple[int, ...], ...] = tuple(adj)
        self._degrees: npt.NDArray[np.int64] = np.fromiter(
            (len(row) for row in adj), dtype=np.int64, count=n
        )
        self._edges: tuple[tuple[int, int], ...] = tuple(
            (v, u) for v, row in enumerate(adj) for u in row if v < u
        )
        # both orientations of every edge, used by the firing rule
        src: list[int] = [v for v, row in enumerate(adj) for _ in row]
        dst: list[int] = [u for row in adj for u in row]
        self._src: npt.NDArray[np.intp] = np.array(src, dtype=np.intp)
        self._dst: npt.NDArray[np.intp] = np.array(dst, dtype=np.intp)
        self._eu: npt.NDArray[np.intp] = np.array(
            [u for u, _ in self._edges], dtype=np.intp
        )
        self._ev: npt.NDArray[np.intp] = np.array(
            [v for _, v in self._edges], dtype=np.intp
        )
        for arr in (self._degrees, self._src, self._dst, self._eu, self._ev):
            arr.flags.writeable = False
        self._nx: nx.Graph | None = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def degrees(self) -> npt.NDArray[np.int64]:
        return self._degrees

    @property
    def arcs(self) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]]:
        """(src, dst) arrays holding each edge in both orientations"""
        return self._src, self._dst

    @property
    def edge_arrays(self) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]]:
        """(u, v) endpoint arrays, one entry per edge with u < v"""
        return self._eu, self._ev

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges (u, v) with u < v, in lexicographic order"""
        return self._edges

    def neighbours(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise IndexOutOfRange(f"vertex {v} not in [0, {self._n})")

    def is_connected(self) -> bool:
        return nx.is_connected(self.nx_view)

    def to_networkx(self) -> nx.Graph:
        """A fresh, mutable networkx copy"""
        G = nx.Graph()
        G.add_nodes_from(range(self._n))
        G.add_edges_from(self._edges)
        return G

    @property
    def nx_view(self) -> nx.Graph:
        """Frozen networkx graph, built on first use"""
        if self._nx is None:
            self._nx = nx.freeze(self.to_networkx())
        return self._nx

    def edge_list_text(self) -> str:
        """Render in the "n m" + "u v" lines edge-list format"""
        lines: list[str] = [f"{self._n} {self.edge_count}"]
        lines.extend(f"{u} {v}" for u, v in self._edges)
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.edge_count})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph with exactly the given edges"""
    if n < 1:
        raise InvalidSize(f"vertex count must be >= 1: {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop ({u}, {v})")
        if v in adj[u]:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj)


def from_networkx(G: nx.Graph) -> Graph:
    """Convert a networkx graph with nodes 0..n-1"""
    n: int = G.number_of_nodes()
    if set(G.nodes) != set(range(n)):
        raise InvalidSpec("networkx graph nodes must be 0..n-1")
    return from_edge_list(n, ((int(u), int(v)) for u, v in G.edges))


def _sizes(family: Family, params: tuple[int, ...], count: int) -> tuple[int, ...]:
    if len(params) != count:
        raise InvalidSize(f"{family} takes {count} parameter(s), got {params}")
    return params


def generate(family: Family | str, params: int | tuple[int, ...]) -> Graph:
    """Generate a named graph family.

    wheel: hub at index 0, rim 1..n-1. star: centre at index 0.
    grid(m, n): row-major, vertex (i, j) -> i*n + j.
    clique_with_pendants(k, l): clique 0..k-1, pendant j of clique vertex i
    at index k + i*l + j.
    """
    try:
        family = Family(family)
    except ValueError:
        raise InvalidSize(f"unknown graph family: {family}")
    if isinstance(params, int):
        params = (params,)
    G: nx.Graph

    match family:
        case Family.path:
            (n,) = _sizes(family, params, 1)
            if n < 1:
                raise InvalidSize(f"path needs n >= 1: {n}")
            G = nx.path_graph(n)
        case Family.cycle:
            (n,) = _sizes(family, params, 1)
            if n < 3:
                raise InvalidSize(f"cycle needs n >= 3: {n}")
            G = nx.cycle_graph(n)
        case Family.wheel:
            (n,) = _sizes(family, params, 1)
            if n < 4:
                raise InvalidSize(f"wheel needs n >= 4: {n}")
            G = nx.wheel_graph(n)
        case Family.complete:
            (n,) = _sizes(family, params, 1)
            if n < 1:
                raise InvalidSize(f"complete graph needs n >= 1: {n}")
            G = nx.complete_graph(n)
        case Family.star:
            (n,) = _sizes(family, params, 1)
            if n < 1:
                raise InvalidSize(f"star needs n >= 1: {n}")
            G = nx.star_graph(n - 1)
        case Family.complete_bipartite:
            m, n = _sizes(family, params, 2)
            if m < 1 or n < 1:
                raise InvalidSize(f"complete bipartite needs m, n >= 1: {params}")
            G = nx.complete_bipartite_graph(m, n)
        case Family.grid:
            rows, cols = _sizes(family, params, 2)
            if rows < 1 or cols < 1:
                raise InvalidSize(f"grid needs m, n >= 1: {params}")
            G = nx.relabel_nodes(
                nx.grid_2d_graph(rows, cols),
                {(i, j): i * cols + j for i in range(rows) for j in range(cols)},
            )
        case Family.clique_with_pendants:
            k, pendants = _sizes(family, params, 2)
            if k < 1 or pendants < 0:
                raise InvalidSize(f"clique_with_pendants needs k >= 1, l >= 0: {params}")
            G = nx.complete_graph(k)
            for i in range(k):
                for j in range(pendants):
                    G.add_edge(i, k + i * pendants + j)
    debug("generated %s%s", family, params)
    return from_networkx(G)


def parse_graph_spec(spec: str) -> Graph:
    """Parse generator spec strings such as 'path:7', 'grid:10x20', 'kpend:4x4'"""
    name, sep, args = spec.partition(":")
    if sep == "" or name.lower() not in SPEC_ALIASES:
        raise InvalidSpec(f"not a generator spec: {spec}")
    try:
        params: tuple[int, ...] = tuple(int(a) for a in args.lower().split("x"))
    except ValueError:
        raise InvalidSpec(f"invalid generator parameters: {spec}")
    return generate(SPEC_ALIASES[name.lower()], params)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: first line "n m", then m lines "u v" """
    rows: list[list[str]] = [
        line.split() for line in text.splitlines() if line.strip() != ""
    ]
    if len(rows) == 0 or len(rows[0]) != 2:
        raise InvalidSpec("edge list must start with a 'n m' line")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges: list[tuple[int, int]] = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as err:
        raise InvalidSpec(f"malformed edge list: {err}")
    if len(edges) != m:
        raise InvalidSpec(f"edge list declares {m} edges, found {len(edges)}")
    return from_edge_list(n, edges)


async def read_edge_list(filename: Path | str) -> Graph:
    """Read an edge-list file"""
    debug("reading edge list: %s", str(filename))
    async with open(filename, "r") as f:
        return parse_edge_list(await f.read())


async def load_graph(spec: str) -> Graph:
    """Graph from a generator spec or an edge-list file"""
    try:
        return parse_graph_spec(spec)
    except InvalidSpec:
        if Path(spec).is_file():
            return await read_edge_list(spec)
        raise


########################################################
#
# Layers, metrics and twins
#
########################################################


class LayerDecomposition(BaseModel):
    """BFS layers N_0(v)={v}, N_1(v), ... with up/down degrees.

    deg_up[x] counts neighbours of x one layer closer to the source,
    deg_down[x] one layer farther."""

    source: int
    layers: list[list[int]]
    deg_up: list[int]
    deg_down: list[int]
    eccentricity: int

    model_config = ConfigDict(frozen=True)

    def distances(self) -> list[int]:
        res: list[int] = [0] * sum(len(layer) for layer in self.layers)
        for i, layer in enumerate(self.layers):
            for x in layer:
                res[x] = i
        return res


def bfs_distances(g: Graph, v: int) -> dict[int, int]:
    """Distances from v to every vertex reachable from v"""
    g.check_vertex(v)
    return dict(nx.single_source_shortest_path_length(g.nx_view, v))


def eccentricity(g: Graph, v: int) -> int:
    """Max distance from v within its component"""
    g.check_vertex(v)
    G: nx.Graph = g.nx_view
    return nx.eccentricity(G.subgraph(nx.node_connected_component(G, v)), v)


def layer_decomposition(g: Graph, v: int) -> LayerDecomposition:
    """BFS layer decomposition from v. The graph must be connected."""
    g.check_vertex(v)
    layers: list[list[int]] = [sorted(layer) for layer in nx.bfs_layers(g.nx_view, v)]
    reached: int = sum(len(layer) for layer in layers)
    if reached != g.n:
        raise Disconnected(f"{g.n - reached} vertices unreachable from {v}")
    dist: dict[int, int] = {x: i for i, layer in enumerate(layers) for x in layer}
    deg_up: list[int] = [0] * g.n
    deg_down: list[int] = [0] * g.n
    for x in range(g.n):
        for y in g.adjacency[x]:
            if dist[y] == dist[x] - 1:
                deg_up[x] += 1
            elif dist[y] == dist[x] + 1:
                deg_down[x] += 1
    return LayerDecomposition(
        source=v,
        layers=layers,
        deg_up=deg_up,
        deg_down=deg_down,
        eccentricity=len(layers) - 1,
    )


class GraphMetrics(JSONExportable):
    """radius/diameter are None for disconnected graphs;
    component_radii/component_diameters are always given"""

    _schema_name = "metrics"

    n: int
    m: int
    radius: int | None = None
    diameter: int | None = None
    is_bipartite: bool
    components: int
    component_radii: list[int]
    component_diameters: list[int]


def metrics(g: Graph) -> GraphMetrics:
    G: nx.Graph = g.nx_view
    radii: list[int] = list()
    diameters: list[int] = list()
    for comp in sorted(nx.connected_components(G), key=min):
        eccs: dict[int, int] = nx.eccentricity(G.subgraph(comp))
        radii.append(nx.radius(G, e=eccs))
        diameters.append(nx.diameter(G, e=eccs))
    connected: bool = len(radii) == 1
    return GraphMetrics(
        n=g.n,
        m=g.edge_count,
        radius=radii[0] if connected else None,
        diameter=diameters[0] if connected else None,
        is_bipartite=nx.is_bipartite(G),
        components=len(radii),
        component_radii=radii,
        component_diameters=diameters,
    )


class TwinKind(StrEnum):
    open = "open"
    closed = "closed"


class Twin(NamedTuple):
    u: int
    v: int
    kind: TwinKind


def twins(g: Graph) -> list[Twin]:
    """All pairs u < v with N(u) = N(v) (open) or N[u] = N[v] (closed)"""
    res: list[Twin] = list()
    for kind in (TwinKind.open, TwinKind.closed):
        groups: dict[frozenset[int], list[int]] = dict()
        for v in range(g.n):
            hood: frozenset[int] = frozenset(g.adjacency[v])
            if kind == TwinKind.closed:
                hood = hood | {v}
            groups.setdefault(hood, list()).append(v)
        for members in groups.values():
            res.extend(Twin(u, v, kind) for u, v in combinations(members, 2))
    return sorted(res)

