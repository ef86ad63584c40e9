########################################################
#
# Seeded random-trial runner
#
########################################################

import logging
from collections import Counter
from multiprocessing import Pool

import numpy as np
from result import Err, Ok

from .dynamics import Config
from .errors import InvalidParams, InvalidRange
from .exportable import CSVExportable, JSONExportable
from .graph import Graph
from .periodicity import DEFAULT_BUDGET, detect_period
from .utils import worker_count

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug

SEED_MASK: int = 2**64 - 1
EXHAUSTED: str = "budget_exhausted"


def derive_seed(seed: int, index: int) -> int:
    """Sub-seed of trial `index`: the first 64-bit word of
    numpy SeedSequence([seed mod 2^64, index])"""
    ss = np.random.SeedSequence([seed & SEED_MASK, index])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def random_config(g: Graph, lo: int, hi: int, seed: int) -> Config:
    """Entries uniform on [lo, hi], drawn from PCG64 seeded with `seed`"""
    if lo > hi:
        raise InvalidRange(f"lo > hi: {lo} > {hi}")
    rng = np.random.Generator(np.random.PCG64(seed & SEED_MASK))
    return rng.integers(lo, hi, size=g.n, dtype=np.int64, endpoint=True)


class TrialResult(CSVExportable):
    index: int
    seed: int
    pre_period: int | None = None
    period: int | None = None
    classification: str
    steps_used: int

    @property
    def tight(self) -> bool:
        return self.period in (1, 2)


class TrialSummary(JSONExportable):
    _schema_name = "trials"

    graph: str
    n: int
    lo: int
    hi: int
    seed: int
    trials: int
    budget: int
    results: list[TrialResult]
    histogram: dict[str, int]
    exhausted: int
    all_tight: bool


def run_trial(g: Graph, lo: int, hi: int, seed: int, index: int, budget: int) -> TrialResult:
    sub_seed: int = derive_seed(seed, index)
    c0: Config = random_config(g, lo, hi, sub_seed)
    match detect_period(g, c0, budget):
        case Ok(report):
            return TrialResult(
                index=index,
                seed=sub_seed,
                pre_period=report.pre_period,
                period=report.period,
                classification=report.classification.value,
                steps_used=report.steps_used,
            )
        case Err(exhausted):
            return TrialResult(
                index=index,
                seed=sub_seed,
                classification=EXHAUSTED,
                steps_used=exhausted.steps_used,
            )
    raise RuntimeError("unreachable")


def _run_trial(args: tuple[Graph, int, int, int, int, int]) -> TrialResult:
    return run_trial(*args)


def run_trials(
    g: Graph,
    lo: int,
    hi: int,
    trials: int,
    seed: int,
    budget: int = DEFAULT_BUDGET,
    graph: str = "",
    workers: int | None = None,
) -> TrialSummary:
    """Run detect_period on `trials` random configurations. Trial i draws from
    derive_seed(seed, i), so results do not depend on the worker count."""
    if trials < 1:
        raise InvalidParams(f"trials must be >= 1: {trials}")
    if lo > hi:
        raise InvalidRange(f"lo > hi: {lo} > {hi}")
    workers = min(worker_count(workers), trials)
    jobs = [(g, lo, hi, seed, i, budget) for i in range(trials)]
    results: list[TrialResult]
    if workers <= 1:
        results = [_run_trial(job) for job in jobs]
    else:
        debug("running %d trials with %d workers", trials, workers)
        with Pool(workers) as pool:
            results = pool.map(_run_trial, jobs, chunksize=max(1, trials // (4 * workers)))

    classes: Counter[str] = Counter(res.classification for res in results)
    histogram: Counter[str] = Counter(
        f"{res.pre_period}:{res.period}" for res in results if res.period is not None
    )
    summary = TrialSummary(
        graph=graph,
        n=g.n,
        lo=lo,
        hi=hi,
        seed=seed,
        trials=trials,
        budget=budget,
        results=results,
        histogram=dict(sorted(histogram.items())),
        exhausted=classes[EXHAUSTED],
        all_tight=all(res.tight for res in results),
    )
    if not summary.all_tight:
        message(
            "%d of %d trials not tight",
            sum(not res.tight for res in results),
            trials,
        )
    verbose(
        "trials: %s", ", ".join(f"{c}={n}" for c, n in sorted(classes.items()))
    )
    return summary
