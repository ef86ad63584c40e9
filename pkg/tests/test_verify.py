import pytest  # type: ignore
import logging

import numpy as np

from diffusion_game import (
    InvalidParams,
    OracleReport,
    SuiteParams,
    UnknownSuite,
    detect_period,
    from_edge_list,
    millpond_config,
    search_millpond_excess,
    verify_oracle,
)
from diffusion_game.graph import eccentricity
from diffusion_game.verify import SUITES, Counterexample, random_bipartite, random_tree

########################################################
#
# Test Plan
#
########################################################

# 1) Random graph samplers
# 2) Every suite passes on small parameters
# 3) Counterexample bookkeeping
# 4) Non-bipartite mill-pond search
# 5) Every suite passes at its default size

logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug


SMALL: dict[str, SuiteParams] = {
    "millpond": SuiteParams(cases=15, max_vertices=14),
    "qf": SuiteParams(cases=15, max_vertices=14),
    "path-full-degree": SuiteParams(sizes=(3, 24)),
    "star-bound": SuiteParams(cases=60, max_vertices=20),
    "two-value-kn": SuiteParams(cases=40),
    "two-value-kmn": SuiteParams(cases=40),
    "property-plus": SuiteParams(cases=60, max_vertices=9),
}


def test_1_samplers() -> None:
    rng = np.random.default_rng(3)
    for n in range(1, 30):
        t = random_tree(rng, n)
        assert t.n == n and t.edge_count == n - 1, f"tree on {n} vertices"
        assert t.is_connected(), f"tree on {n} vertices not connected"
    for _ in range(40):
        name, g = random_bipartite(rng, 16)
        assert g.is_connected(), f"{name} not connected"
        assert g.n <= 16, f"{name} has {g.n} vertices"
    with pytest.raises(InvalidParams):
        random_bipartite(rng, 3)


@pytest.mark.timeout(300)
@pytest.mark.parametrize("suite", list(SMALL.keys()))
def test_2_suites(suite: str) -> None:
    report: OracleReport = verify_oracle(suite, SMALL[suite])
    assert report.suite == suite, f"suite name {report.suite}"
    assert report.cases > 0, f"{suite} checked nothing"
    assert report.passed, f"{suite} failed: {report.counterexamples[:3]}"
    assert report.schema_id == "diffusion-game/oracle/1", report.schema_id


@pytest.mark.timeout(300)
@pytest.mark.parametrize("suite", [s for s in SUITES if s.startswith("bounds:")])
def test_3_bound_suites(suite: str) -> None:
    report = verify_oracle(suite, SuiteParams(sizes=(4, 8), cases=10, steps=60))
    assert report.cases > 0, f"{suite} checked nothing"
    assert report.passed, f"{suite} failed: {report.counterexamples[:3]}"


def test_4_unknown_suite() -> None:
    with pytest.raises(UnknownSuite):
        verify_oracle("sandpile")
    with pytest.raises(UnknownSuite):
        verify_oracle("bounds:no_such_bound")


def test_5_counterexamples() -> None:
    report = OracleReport(suite="millpond", params=SuiteParams())
    for i in range(25):
        report.fail(Counterexample(graph=f"g{i}", detail="mismatch", time=i))
    assert report.failures == 25, f"failures {report.failures}"
    assert len(report.counterexamples) == 20, "counterexample list not capped"
    assert not report.passed, "failing report passed"
    obj = report.obj_src()
    assert obj["params"]["seed"] == 0, "params not exported"


def test_6_search_small() -> None:
    with pytest.raises(InvalidParams):
        search_millpond_excess(2, 1, 1)
    report = search_millpond_excess(4, 99, 1, limit=1)
    assert report.scanned == 2**6 - 1, f"scanned {report.scanned}"
    assert report.candidates > 0, "a triangle with a pendant at 0 is a candidate"
    assert report.hits == [], "no pre-period of 99 on four vertices"


@pytest.mark.timeout(600)
def test_7_search_six_vertices() -> None:
    report = search_millpond_excess(6, 6, 1, limit=1)
    assert len(report.hits) == 1, f"no graph found after {report.scanned} scans"
    hit = report.hits[0]
    g = from_edge_list(hit.n, hit.edges)
    assert eccentricity(g, 0) == 2, "source eccentricity"
    res = detect_period(g, millpond_config(g, 0)).unwrap()
    assert res.pre_period == 6, f"pre-period {res.pre_period}"
    assert res.pre_period > eccentricity(g, 0) - 1, "pre-period should exceed eccentricity - 1"


@pytest.mark.timeout(600)
@pytest.mark.parametrize("suite", [s for s in SUITES if s != "millpond-excess"])
def test_8_default_suites(suite: str) -> None:
    report: OracleReport = verify_oracle(suite)
    assert report.params == SuiteParams(), "default parameters not recorded"
    assert report.cases > 0, f"{suite} checked nothing"
    assert report.passed, f"{suite} failed: {report.counterexamples[:3]}"
