import pytest  # type: ignore
import logging

from diffusion_game import (
    Family,
    InvalidParams,
    InvalidRange,
    TrialResult,
    TrialSummary,
    derive_seed,
    generate,
    parse_graph_spec,
    random_config,
    run_trials,
)
from diffusion_game.trials import EXHAUSTED, run_trial

########################################################
#
# Test Plan
#
########################################################

# 1) Seed derivation and random configurations are reproducible
# 2) Trial summaries on tiny graphs
# 3) Results do not depend on the worker count
# 4) Grid experiment, scaled down and full size (slow)

logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug


def test_1_derive_seed() -> None:
    assert derive_seed(42, 0) == derive_seed(42, 0), "derive_seed not deterministic"
    seeds = {derive_seed(42, i) for i in range(100)}
    assert len(seeds) == 100, "sub-seeds collide"
    assert derive_seed(42, 0) != derive_seed(43, 0), "seed ignored"
    assert derive_seed(-1, 3) == derive_seed(2**64 - 1, 3), "seed not reduced mod 2^64"
    assert all(0 <= s < 2**64 for s in seeds), "sub-seed outside 64 bits"


def test_2_random_config() -> None:
    g = generate(Family.grid, (4, 5))
    c = random_config(g, 1, 200, 1234)
    assert len(c) == 20, f"length {len(c)}"
    assert c.min() >= 1 and c.max() <= 200, "entries outside [1, 200]"
    assert c.tolist() == random_config(g, 1, 200, 1234).tolist(), "not reproducible"
    assert c.tolist() != random_config(g, 1, 200, 1235).tolist(), "seed ignored"
    assert random_config(g, 7, 7, 0).tolist() == [7] * 20, "degenerate range"
    assert set(random_config(g, -1, 1, 5).tolist()) <= {-1, 0, 1}, "hi is inclusive"
    with pytest.raises(InvalidRange):
        random_config(g, 2, 1, 0)


def test_3_single_vertex_trials() -> None:
    summary = run_trials(generate(Family.path, 1), 1, 10, 5, seed=1, graph="path:1", workers=1)
    assert summary.trials == 5 and len(summary.results) == 5, "trial count"
    assert summary.histogram == {"0:1": 5}, f"histogram {summary.histogram}"
    assert summary.all_tight, "a single vertex is always fixed"
    assert summary.exhausted == 0, "nothing exhausted"
    assert [r.index for r in summary.results] == list(range(5)), "results out of order"
    assert summary.schema_id == "diffusion-game/trials/1", summary.schema_id


def test_4_trial_errors() -> None:
    g = generate(Family.path, 3)
    with pytest.raises(InvalidParams):
        run_trials(g, 0, 5, 0, seed=1)
    with pytest.raises(InvalidRange):
        run_trials(g, 5, 0, 3, seed=1)


def test_5_exhausted_trials() -> None:
    g = generate(Family.grid, (10, 20))
    res: TrialResult = run_trial(g, 1, 200, 3, 0, 1)
    assert res.classification == EXHAUSTED, f"one step is not enough: {res}"
    assert res.period is None and res.pre_period is None, "exhausted run has no period"
    assert not res.tight, "exhausted run is not tight"
    row = res.csv_row()
    assert row["period"] == "" and row["pre_period"] == "", f"CSV row {row}"
    assert row["classification"] == EXHAUSTED, "classification column"

    summary = run_trials(g, 1, 200, 4, seed=3, budget=1, workers=1)
    assert summary.exhausted == 4, f"exhausted {summary.exhausted}"
    assert summary.histogram == {}, "exhausted trials stay out of the histogram"
    assert not summary.all_tight, "exhausted trials are not tight"


@pytest.mark.timeout(120)
def test_6_worker_count_independent() -> None:
    g = generate(Family.cycle, 9)
    serial = run_trials(g, -10, 10, 12, seed=7, budget=10_000, workers=1)
    parallel = run_trials(g, -10, 10, 12, seed=7, budget=10_000, workers=2)
    assert [r.model_dump() for r in serial.results] == [
        r.model_dump() for r in parallel.results
    ], "results depend on the worker count"
    assert serial.histogram == parallel.histogram, "histograms differ"


@pytest.mark.timeout(300)
def test_7_grid_scaled() -> None:
    g = parse_graph_spec("grid:10x20")
    summary: TrialSummary = run_trials(g, 1, 200, 50, seed=42, graph="grid:10x20")
    assert summary.n == 200, f"grid size {summary.n}"
    assert summary.exhausted == 0, f"{summary.exhausted} trials exhausted the budget"
    assert summary.all_tight, f"non-tight trial on the grid: {summary.histogram}"
    assert sum(summary.histogram.values()) == 50, "histogram does not cover every trial"


@pytest.mark.slow
@pytest.mark.timeout(1800)
def test_8_grid_full_scale() -> None:
    g = parse_graph_spec("grid:50x100")
    summary: TrialSummary = run_trials(g, 1, 200, 200, seed=42, graph="grid:50x100")
    assert summary.all_tight, f"non-tight trial on the full grid: {summary.histogram}"
