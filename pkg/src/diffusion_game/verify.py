########################################################
#
# Oracle-vs-engine verification suites
#
########################################################

import logging
from itertools import combinations
from typing import Callable, Iterator

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict
from result import Err, Ok

from .dynamics import Config, as_config, trajectory
from .errors import (
    BoundInapplicable,
    CertificateViolation,
    InvalidParams,
    UnknownSuite,
)
from .exportable import JSONExportable
from .graph import (
    Family,
    Graph,
    bfs_distances,
    from_edge_list,
    from_networkx,
    generate,
    layer_decomposition,
    twins,
)
from .oracles import (
    BoundId,
    check_bound,
    complete_bipartite_two_value_predict,
    complete_two_value_predict,
    full_degree_config,
    millpond_config,
    millpond_predict,
    path_full_degree_predict,
    path_table_word,
    qf_config,
    qf_predict,
    star_preperiod_bound,
)
from .periodicity import (
    PeriodReport,
    detect_period,
    first_property_plus_time,
    has_property_plus,
)
from .trials import derive_seed, random_config

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug

SUITES: list[str] = [
    "millpond",
    "path-full-degree",
    "star-bound",
    "two-value-kn",
    "two-value-kmn",
    "qf",
    "property-plus",
    "millpond-excess",
] + [f"bounds:{b.value}" for b in BoundId]

MAX_COUNTEREXAMPLES: int = 20
SUITE_BUDGET: int = 10**5


class SuiteParams(BaseModel):
    """Suite parameters. None means the suite's own default."""

    sizes: tuple[int, int] | None = None
    cases: int | None = None
    chips: tuple[int, int] | None = None
    steps: int | None = None
    max_vertices: int | None = None
    target: int | None = None
    seed: int = 0
    budget: int = SUITE_BUDGET

    model_config = ConfigDict(frozen=True)


class Counterexample(BaseModel):
    graph: str
    detail: str
    time: int | None = None
    expected: list[int] | None = None
    observed: list[int] | None = None


class OracleReport(JSONExportable):
    _schema_name = "oracle"

    suite: str
    params: SuiteParams
    cases: int = 0
    skipped: int = 0
    failures: int = 0
    counterexamples: list[Counterexample] = list()

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, cex: Counterexample) -> None:
        self.failures += 1
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(cex)
        if self.failures == 1:
            message("%s: %s: %s", self.suite, cex.graph, cex.detail)


def _rng(params: SuiteParams, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(params.seed, index)))


def _edge_name(g: Graph) -> str:
    return f"n={g.n} edges={list(g.edges())}"


########################################################
#
# Graph samplers
#
########################################################


def random_tree(rng: np.random.Generator, n: int) -> Graph:
    """Tree where vertex i > 0 hangs from a uniform earlier vertex"""
    return from_edge_list(n, [(int(rng.integers(0, i)), i) for i in range(1, n)])


def random_bipartite(rng: np.random.Generator, max_vertices: int) -> tuple[str, Graph]:
    """Random connected bipartite graph: tree, grid, even cycle or K_{m,n}"""
    if max_vertices < 4:
        raise InvalidParams(f"max_vertices must be >= 4: {max_vertices}")
    kind: int = int(rng.integers(0, 4))
    if kind == 0:
        n = int(rng.integers(1, max_vertices + 1))
        return f"tree:{n}", random_tree(rng, n)
    elif kind == 1:
        rows = int(rng.integers(1, 7))
        cols = int(rng.integers(1, max(1, max_vertices // rows) + 1))
        return f"grid:{rows}x{cols}", generate(Family.grid, (rows, cols))
    elif kind == 2:
        n = 2 * int(rng.integers(2, max_vertices // 2 + 1))
        return f"cycle:{n}", generate(Family.cycle, n)
    m = int(rng.integers(1, max_vertices))
    n = int(rng.integers(1, max_vertices - m + 1))
    return f"kbip:{m}x{n}", generate(Family.complete_bipartite, (m, n))


def _bound_graphs(bound_id: BoundId, lo: int, hi: int) -> Iterator[tuple[str, Graph]]:
    match bound_id:
        case BoundId.deg2_edge | BoundId.edge_difference:
            for n in range(max(lo, 3), hi + 1):
                yield f"path:{n}", generate(Family.path, n)
                yield f"cycle:{n}", generate(Family.cycle, n)
        case BoundId.twin_pair | BoundId.twin_lock:
            for n in range(max(lo, 3), hi + 1):
                yield f"complete:{n}", generate(Family.complete, n)
                yield f"star:{n}", generate(Family.star, n)
                yield f"kbip:{n // 2}x{n - n // 2}", generate(
                    Family.complete_bipartite, (n // 2, n - n // 2)
                )
        case BoundId.wheel_rim | BoundId.wheel_hub:
            for n in range(max(lo, 4), hi + 1):
                yield f"wheel:{n}", generate(Family.wheel, n)


########################################################
#
# Suites
#
########################################################


def _compare(
    res: OracleReport,
    name: str,
    traj: list[Config],
    predict: Callable[[int], Config],
) -> None:
    for t, c in enumerate(traj):
        res.cases += 1
        expected: Config = predict(t)
        if not np.array_equal(expected, c):
            res.fail(
                Counterexample(
                    graph=name,
                    detail="prediction differs from simulation",
                    time=t,
                    expected=expected.tolist(),
                    observed=c.tolist(),
                )
            )
            return


def _suite_millpond(params: SuiteParams) -> OracleReport:
    res = OracleReport(suite="millpond", params=params)
    for i in range(params.cases or 100):
        rng = _rng(params, i)
        name, g = random_bipartite(rng, params.max_vertices or 40)
        for v in range(g.n):
            d = layer_decomposition(g, v)
            traj = trajectory(g, millpond_config(g, v), 2 * d.eccentricity + 4)
            _compare(res, f"{name} v={v}", traj, lambda t: millpond_predict(d, g, t))
            match detect_period(g, traj[0], params.budget):
                case Ok(report):
                    if report.period > 2 or report.pre_period > max(d.eccentricity - 1, 0):
                        res.fail(
                            Counterexample(
                                graph=f"{name} v={v}",
                                detail=f"pre_period={report.pre_period} "
                                f"period={report.period} "
                                f"eccentricity={d.eccentricity}",
                            )
                        )
                case Err(_):
                    res.fail(Counterexample(graph=f"{name} v={v}", detail="budget exhausted"))
    return res


def _suite_qf(params: SuiteParams) -> OracleReport:
    res = OracleReport(suite="qf", params=params)
    for i in range(params.cases or 100):
        rng = _rng(params, i)
        name, g = random_bipartite(rng, params.max_vertices or 40)
        for v in range(g.n):
            d = layer_decomposition(g, v)
            try:
                qf_predict(d, g, 0)
            except BoundInapplicable:
                res.skipped += 1
                continue
            traj = trajectory(g, qf_config(g, v), 2 * d.eccentricity + 4)
            _compare(res, f"{name} v={v}", traj, lambda t: qf_predict(d, g, t))
    return res


def _suite_path(params: SuiteParams) -> OracleReport:
    res = OracleReport(suite="path-full-degree", params=params)
    lo, hi = params.sizes or (3, 64)
    for n in range(max(lo, 3), hi + 1):
        g = generate(Family.path, n)
        traj = trajectory(g, full_degree_config(g), n)
        _compare(res, f"path:{n}", traj, lambda t: path_full_degree_predict(n, t))
        T, word = path_table_word(n)
        if traj[T].tolist() != word:
            res.fail(
                Counterexample(
                    graph=f"path:{n}",
                    detail="table word",
                    time=T,
                    expected=word,
                    observed=traj[T].tolist(),
                )
            )
        match detect_period(g, traj[0], params.budget):
            case Ok(report) if report.pre_period == T and report.period == 2:
                pass
            case Ok(report):
                res.fail(
                    Counterexample(
                        graph=f"path:{n}",
                        detail=f"pre_period={report.pre_period} period={report.period}",
                    )
                )
            case Err(_):
                res.fail(Counterexample(graph=f"path:{n}", detail="budget exhausted"))
    return res


def _suite_star(params: SuiteParams) -> OracleReport:
    res = OracleReport(suite="star-bound", params=params)
    lo, hi = params.chips or (-20, 20)
    for i in range(params.cases or 500):
        rng = _rng(params, i)
        n = int(rng.integers(2, (params.max_vertices or 50) + 1))
        g = generate(Family.star, n)
        c0 = random_config(g, lo, hi, derive_seed(params.seed, i))
        bound: int = star_preperiod_bound(g, c0)
        res.cases += 1
        match detect_period(g, c0, params.budget):
            case Ok(report) if report.tight and report.pre_period <= bound:
                pass
            case Ok(report):
                res.fail(
                    Counterexample(
                        graph=f"star:{n}",
                        detail=f"{report.classification} pre_period={report.pre_period} "
                        f"bound={bound}",
                        observed=c0.tolist(),
                    )
                )
            case Err(_):
                res.fail(
                    Counterexample(
                        graph=f"star:{n}", detail="budget exhausted", observed=c0.tolist()
                    )
                )
    return res


def _suite_two_value(params: SuiteParams, bipartite: bool) -> OracleReport:
    res = OracleReport(suite="two-value-kmn" if bipartite else "two-value-kn", params=params)
    lo, hi = params.chips or (-50, 50)
    size: int = params.max_vertices or 12
    for i in range(params.cases or 200):
        rng = _rng(params, i)
        alpha, beta = (int(x) for x in rng.integers(lo, hi, size=2, endpoint=True))
        if bipartite:
            a = int(rng.integers(1, size))
            b = int(rng.integers(1, size - a + 1))
            g = generate(Family.complete_bipartite, (a, b))
            name = f"kbip:{a}x{b}"
        else:
            n = int(rng.integers(2, size + 1))
            a = int(rng.integers(1, n + 1))
            g = generate(Family.complete, n)
            name = f"complete:{n} d={a}"
        c0 = as_config([alpha] * a + [beta] * (g.n - a))
        steps: int = params.steps or abs(beta - alpha) // g.n + 6
        for t, c in enumerate(trajectory(g, c0, steps)):
            res.cases += 1
            if bipartite:
                pa, pb = complete_bipartite_two_value_predict(a, g.n - a, alpha, beta, t)
            else:
                pa, pb = complete_two_value_predict(g.n, a, alpha, beta, t)
            expected = [pa] * a + [pb] * (g.n - a)
            if c.tolist() != expected:
                res.fail(
                    Counterexample(
                        graph=f"{name} alpha={alpha} beta={beta}",
                        detail="prediction differs from simulation",
                        time=t,
                        expected=expected,
                        observed=c.tolist(),
                    )
                )
                break
    return res


def _suite_property_plus(params: SuiteParams) -> OracleReport:
    res = OracleReport(suite="property-plus", params=params)
    lo, hi = params.chips or (-10, 10)
    for i in range(params.cases or 1000):
        rng = _rng(params, i)
        n = int(rng.integers(1, (params.max_vertices or 20) + 1))
        p = float(rng.uniform(0.1, 0.6))
        g = from_networkx(nx.gnp_random_graph(n, p, seed=int(rng.integers(0, 2**32))))
        c0 = random_config(g, lo, hi, derive_seed(params.seed, i))
        report: PeriodReport
        match detect_period(g, c0, params.budget):
            case Ok(report):
                pass
            case Err(_):
                res.skipped += 1
                continue
        if not report.tight:
            res.skipped += 1
            continue
        res.cases += 1
        entry: Config = trajectory(g, c0, report.pre_period)[-1]
        try:
            first = first_property_plus_time(g, c0, report.pre_period)
        except CertificateViolation as err:
            first = Err(str(err))
        if not has_property_plus(g, entry) or first != Ok(report.pre_period):
            res.fail(
                Counterexample(
                    graph=_edge_name(g),
                    detail=f"pre_period={report.pre_period}, first property plus: {first}",
                    observed=c0.tolist(),
                )
            )
    return res


def _suite_bounds(params: SuiteParams, bound_id: BoundId) -> OracleReport:
    res = OracleReport(suite=f"bounds:{bound_id}", params=params)
    lo, hi = params.sizes or (4, 12)
    chip_lo, chip_hi = params.chips or (-20, 20)
    steps: int = params.steps or 100
    for name, g in _bound_graphs(bound_id, lo, hi):
        pair = twins(g)[0] if bound_id == BoundId.twin_lock else None
        for i in range(params.cases or 100):
            c0 = random_config(g, chip_lo, chip_hi, derive_seed(params.seed, i))
            if pair is not None:
                c0[pair.v] = c0[pair.u]
            res.cases += 1
            report = check_bound(bound_id, g, trajectory(g, c0, steps))
            if not report.holds and report.first_violation is not None:
                v = report.first_violation
                res.fail(
                    Counterexample(
                        graph=name,
                        detail=f"|c({v.u}) - c({v.v})| = {v.observed} > {v.bound}",
                        time=v.time,
                        observed=c0.tolist(),
                    )
                )
    return res


########################################################
#
# Mill-pond pre-period search
#
########################################################


class SearchHit(BaseModel):
    n: int
    edges: list[tuple[int, int]]
    source: int
    eccentricity: int
    pre_period: int
    period: int


class SearchReport(JSONExportable):
    _schema_name = "search"

    n: int
    target_pre_period: int
    target_ecc_minus_one: int
    scanned: int = 0
    candidates: int = 0
    hits: list[SearchHit] = list()


def search_millpond_excess(
    n: int,
    target_pre_period: int,
    target_ecc_minus_one: int,
    limit: int = 1,
    budget: int = SUITE_BUDGET,
) -> SearchReport:
    """Scan every connected non-bipartite graph on n labelled vertices with the
    mill-pond placed at vertex 0, for pre-period target_pre_period and
    eccentricity(0) - 1 = target_ecc_minus_one. Stops after `limit` hits."""
    if n < 3 or limit < 1:
        raise InvalidParams(f"need n >= 3 and limit >= 1: n={n}, limit={limit}")
    res = SearchReport(
        n=n,
        target_pre_period=target_pre_period,
        target_ecc_minus_one=target_ecc_minus_one,
    )
    pairs: list[tuple[int, int]] = list(combinations(range(n), 2))
    for mask in range(1, 2 ** len(pairs)):
        res.scanned += 1
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        g = from_edge_list(n, edges)
        dist = bfs_distances(g, 0)
        if len(dist) != n or max(dist.values()) - 1 != target_ecc_minus_one:
            continue
        if nx.is_bipartite(g.to_networkx()):
            continue
        res.candidates += 1
        match detect_period(g, millpond_config(g, 0), budget):
            case Ok(report) if report.pre_period == target_pre_period:
                res.hits.append(
                    SearchHit(
                        n=n,
                        edges=edges,
                        source=0,
                        eccentricity=target_ecc_minus_one + 1,
                        pre_period=report.pre_period,
                        period=report.period,
                    )
                )
                verbose("hit: %s", str(edges))
                if len(res.hits) >= limit:
                    break
    verbose(
        "scanned %d graphs, %d candidates, %d hits",
        res.scanned,
        res.candidates,
        len(res.hits),
    )
    return res


def _suite_millpond_excess(params: SuiteParams) -> OracleReport:
    res = OracleReport(suite="millpond-excess", params=params)
    n: int = params.max_vertices or 6
    target: int = params.target or 6
    search = search_millpond_excess(n, target, 1, budget=params.budget)
    res.cases = search.candidates
    if len(search.hits) == 0:
        res.fail(
            Counterexample(
                graph=f"all graphs on {n} vertices",
                detail=f"no mill-pond with pre-period {target} and eccentricity 2",
            )
        )
    return res


def verify_oracle(suite: str, params: SuiteParams | None = None) -> OracleReport:
    """Run a named oracle suite"""
    params = params or SuiteParams()
    res: OracleReport
    match suite:
        case "millpond":
            res = _suite_millpond(params)
        case "qf":
            res = _suite_qf(params)
        case "path-full-degree":
            res = _suite_path(params)
        case "star-bound":
            res = _suite_star(params)
        case "two-value-kn":
            res = _suite_two_value(params, bipartite=False)
        case "two-value-kmn":
            res = _suite_two_value(params, bipartite=True)
        case "property-plus":
            res = _suite_property_plus(params)
        case "millpond-excess":
            res = _suite_millpond_excess(params)
        case _ if suite.startswith("bounds:"):
            try:
                bound_id = BoundId(suite.removeprefix("bounds:"))
            except ValueError:
                raise UnknownSuite(f"unknown bound: {suite}")
            res = _suite_bounds(params, bound_id)
        case _:
            raise UnknownSuite(f"unknown suite: {suite}")
    verbose(
        "%s: %d cases, %d failures, %d skipped", suite, res.cases, res.failures, res.skipped
    )
    return res
