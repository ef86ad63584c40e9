########################################################
#
# diffuse: command line front end
#
########################################################

import logging
import sys
from argparse import ArgumentParser, Namespace
from asyncio import run
from typing import Sequence

from pyutils import awrap
from result import Err, Ok

from .dynamics import Config, simulate
from .errors import DiffusionError
from .exportable import JSONExportable, export
from .graph import Graph, load_graph
from .periodicity import DEFAULT_BUDGET, detect_period
from .presets import load_config, parse_range
from .state_graph import (
    DEFAULT_WINDOW_CAP,
    ConfigWindow,
    build_state_graph,
    cycle_census,
    successor_rows,
)
from .trials import run_trials
from .utils import env_int
from .verify import SUITES, SuiteParams, search_millpond_excess, verify_oracle

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug

EXIT_OK: int = 0
EXIT_FAIL: int = 1
EXIT_BUDGET: int = 2

FULL_SCALE_GRID: str = "grid:50x100"
FULL_SCALE_TRIALS: int = 200


def make_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="diffuse", description="Diffusion game simulation and verification"
    )
    log_level = parser.add_mutually_exclusive_group()
    log_level.add_argument("--verbose", action="store_true", help="verbose logging")
    log_level.add_argument("--debug", action="store_true", help="debug logging")
    log_level.add_argument("--silent", action="store_true", help="errors only")
    output = ArgumentParser(add_help=False)
    output.add_argument("--file", type=str, default="-", help="output file, '-' for STDOUT")
    output.add_argument("--force", action="store_true", help="overwrite existing output")

    cmds = parser.add_subparsers(dest="command", required=True)

    budget = env_int("DIFFUSE_BUDGET", DEFAULT_BUDGET)

    simulate_p = cmds.add_parser(
        "simulate", parents=[output], help="run the firing rule for N steps"
    )
    simulate_p.add_argument(
        "--graph", type=str, required=True, help="generator spec or edge-list file"
    )
    simulate_p.add_argument(
        "--config", type=str, required=True, help="preset or configuration file"
    )
    simulate_p.add_argument("--steps", type=int, required=True)
    simulate_p.add_argument("--out", choices=["json", "csv"], default="json")
    simulate_p.add_argument("--emit-trajectory", action="store_true")
    simulate_p.add_argument("--seed", type=int, default=0, help="seed for random presets")

    period_p = cmds.add_parser(
        "period", parents=[output], help="detect pre-period and period"
    )
    period_p.add_argument("--graph", type=str, required=True)
    period_p.add_argument("--config", type=str, required=True)
    period_p.add_argument("--budget", type=int, default=budget)
    period_p.add_argument("--seed", type=int, default=0)

    trials_p = cmds.add_parser(
        "trials", parents=[output], help="random-configuration experiment"
    )
    trials_p.add_argument("--graph", type=str, default="grid:10x20")
    trials_p.add_argument("--chips", type=str, default="1..200", metavar="LO..HI")
    trials_p.add_argument("--trials", type=int, default=50)
    trials_p.add_argument("--seed", type=int, default=42)
    trials_p.add_argument("--budget", type=int, default=budget)
    trials_p.add_argument(
        "--full-scale",
        action="store_true",
        help=f"{FULL_SCALE_GRID} with {FULL_SCALE_TRIALS} trials",
    )
    trials_p.add_argument(
        "--workers", type=int, default=None, help="worker processes, capped by DIFFUSE_THREADS"
    )

    oracle_p = cmds.add_parser(
        "oracle", parents=[output], help="oracle-vs-simulation suite"
    )
    oracle_p.add_argument("--suite", type=str, required=True, choices=SUITES)
    oracle_p.add_argument("--sizes", type=str, default=None, metavar="LO..HI")
    oracle_p.add_argument("--cases", type=int, default=None)
    oracle_p.add_argument("--chips", type=str, default=None, metavar="LO..HI")
    oracle_p.add_argument("--steps", type=int, default=None)
    oracle_p.add_argument("--max-vertices", type=int, default=None)
    oracle_p.add_argument("--target", type=int, default=None)
    oracle_p.add_argument("--seed", type=int, default=0)
    oracle_p.add_argument("--budget", type=int, default=10**5)

    state_p = cmds.add_parser(
        "stategraph", parents=[output], help="configuration digraph over a window"
    )
    state_p.add_argument("--graph", type=str, required=True)
    state_p.add_argument("--total", type=int, required=True)
    state_p.add_argument("--lo", type=int, default=0)
    state_p.add_argument("--hi", type=int, default=None)
    state_p.add_argument("--dump", type=str, default=None, metavar="EDGES.csv")
    state_p.add_argument(
        "--cap", type=int, default=env_int("DIFFUSE_WINDOW_CAP", DEFAULT_WINDOW_CAP)
    )

    search_p = cmds.add_parser(
        "search", parents=[output], help="mill-pond pre-period search"
    )
    search_p.add_argument("--vertices", type=int, default=6)
    search_p.add_argument("--pre-period", type=int, default=6)
    search_p.add_argument("--ecc-minus-one", type=int, default=1)
    search_p.add_argument("--limit", type=int, default=1)
    search_p.add_argument("--budget", type=int, default=10**5)
    return parser


def set_logging(args: Namespace) -> None:
    level: int = logging.WARNING
    if args.debug:
        level = logging.DEBUG
    elif args.verbose:
        level = logging.INFO
    elif args.silent:
        level = logging.ERROR
    logging.basicConfig(
        level=level, format="%(levelname)s: %(name)s: %(message)s", stream=sys.stderr
    )


async def _emit(args: Namespace, report: JSONExportable) -> None:
    await export(awrap([report]), "json", args.file, force=args.force)


async def cmd_simulate(args: Namespace) -> int:
    g: Graph = await load_graph(args.graph)
    c0: Config = await load_config(args.config, g, args.seed)
    report = simulate(
        g, c0, args.steps, graph=args.graph, emit_trajectory=args.emit_trajectory
    )
    if args.out == "csv":
        await export(awrap(report.trajectory_rows()), "csv", args.file, force=args.force)
    else:
        await _emit(args, report)
    return EXIT_OK


async def cmd_period(args: Namespace) -> int:
    g: Graph = await load_graph(args.graph)
    c0: Config = await load_config(args.config, g, args.seed)
    match detect_period(g, c0, args.budget):
        case Ok(report):
            await _emit(args, report)
            return EXIT_OK
        case Err(exhausted):
            await _emit(args, exhausted)
    return EXIT_BUDGET


async def cmd_trials(args: Namespace) -> int:
    spec: str = args.graph
    trials: int = args.trials
    if args.full_scale:
        spec, trials = FULL_SCALE_GRID, FULL_SCALE_TRIALS
    g: Graph = await load_graph(spec)
    lo, hi = parse_range(args.chips)
    summary = run_trials(
        g, lo, hi, trials, args.seed, args.budget, graph=spec, workers=args.workers
    )
    await _emit(args, summary)
    return EXIT_OK if summary.all_tight else EXIT_FAIL


async def cmd_oracle(args: Namespace) -> int:
    params = SuiteParams(
        sizes=parse_range(args.sizes) if args.sizes else None,
        cases=args.cases,
        chips=parse_range(args.chips) if args.chips else None,
        steps=args.steps,
        max_vertices=args.max_vertices,
        target=args.target,
        seed=args.seed,
        budget=args.budget,
    )
    report = verify_oracle(args.suite, params)
    await _emit(args, report)
    return EXIT_OK if report.passed else EXIT_FAIL


async def cmd_stategraph(args: Namespace) -> int:
    g: Graph = await load_graph(args.graph)
    w = ConfigWindow(total=args.total, lo=args.lo, hi=args.hi)
    report = build_state_graph(g, w, args.cap, keep_successors=args.dump is not None)
    if args.dump is not None:
        await export(awrap(successor_rows(g, report)), "csv", args.dump, force=args.force)
    await _emit(args, report)
    if not cycle_census(report).conjecture_holds:
        return EXIT_FAIL
    return EXIT_OK


async def cmd_search(args: Namespace) -> int:
    report = search_millpond_excess(
        args.vertices, args.pre_period, args.ecc_minus_one, args.limit, args.budget
    )
    await _emit(args, report)
    return EXIT_OK if len(report.hits) > 0 else EXIT_FAIL


COMMANDS = {
    "simulate": cmd_simulate,
    "period": cmd_period,
    "trials": cmd_trials,
    "oracle": cmd_oracle,
    "stategraph": cmd_stategraph,
    "search": cmd_search,
}


async def main(argv: Sequence[str] | None = None) -> int:
    args: Namespace = make_parser().parse_args(argv)
    set_logging(args)
    debug("args=%s", str(args))
    try:
        return await COMMANDS[args.command](args)
    except DiffusionError as err:
        error(f"{type(err).__name__}: {err}")
    except FileExistsError as err:
        error(f"{err}, use --force to overwrite")
    except OSError as err:
        error(f"{err}")
    return EXIT_FAIL


def cli_main() -> None:
    sys.exit(run(main()))


if __name__ == "__main__":
    cli_main()
