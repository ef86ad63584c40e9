########################################################
#
# Period detection and the property plus certificate
#
########################################################

import logging
from enum import StrEnum

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field
from result import Err, Ok, Result

from .dynamics import Config, as_config, check_length, fire
from .errors import CertificateViolation, InvalidParams
from .exportable import JSONExportable
from .graph import Graph

# Setup logging
logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug

DEFAULT_BUDGET: int = 10**6


class PeriodClass(StrEnum):
    fixed = "fixed"
    tight_period2 = "tight_period2"
    other_periodic = "other_periodic"

    @classmethod
    def of(cls, period: int) -> "PeriodClass":
        if period == 1:
            return cls.fixed
        elif period == 2:
            return cls.tight_period2
        return cls.other_periodic


class PeriodReport(JSONExportable):
    """Minimal pre-period and period of a trajectory.

    A resumed run has start_time > 0 and its pre_period is minimal only
    within the resumed segment."""

    _schema_name = "period"

    pre_period: int
    period: int
    classification: PeriodClass = Field(alias="class")
    steps_used: int
    property_plus_at_entry: bool
    start_time: int = 0
    resumed: bool = False

    @property
    def tight(self) -> bool:
        return self.classification != PeriodClass.other_periodic


class BudgetExhausted(JSONExportable):
    """No repeat within the step budget. Carries the last configuration,
    which is c_{resume_from}, so the run can be continued."""

    _schema_name = "budget-exhausted"

    steps_used: int
    last: list[int]
    resume_from: int

    @property
    def config(self) -> Config:
        return as_config(self.last)


class NotFound(BaseModel):
    budget: int


def _edge_signs(g: Graph, c: Config) -> npt.NDArray[np.int64]:
    eu, ev = g.edge_arrays
    return (c[eu] > c[ev]).astype(np.int64) - (c[eu] < c[ev]).astype(np.int64)


def _property_plus(g: Graph, c: Config, c1: Config) -> bool:
    """every edge order flips strictly and every tie stays a tie"""
    return bool(np.all(_edge_signs(g, c1) == -_edge_signs(g, c)))


def detect_period(
    g: Graph, c0: Config, budget: int = DEFAULT_BUDGET
) -> Result[PeriodReport, BudgetExhausted]:
    """Fire until a configuration repeats. The first repeat at step s of a
    configuration first seen at step f gives pre-period f and period s - f."""
    if budget < 1:
        raise InvalidParams(f"budget must be >= 1: {budget}")
    c: Config = as_config(c0)
    check_length(g, c)
    seen: dict[bytes, int] = {c.tobytes(): 0}

    for s in range(1, budget + 1):
        c = fire(g, c)
        key: bytes = c.tobytes()
        if (f := seen.get(key)) is not None:
            report = PeriodReport(
                pre_period=f,
                period=s - f,
                classification=PeriodClass.of(s - f),
                steps_used=s,
                property_plus_at_entry=has_property_plus(g, c),
            )
            if report.property_plus_at_entry and not report.tight:
                raise CertificateViolation(
                    f"property plus at t={f} but period is {report.period}"
                )
            debug("pre_period=%d period=%d", f, s - f)
            return Ok(report)
        seen[key] = s
    verbose("no repeat within %d steps", budget)
    return Err(BudgetExhausted(steps_used=budget, last=c.tolist(), resume_from=budget))


def resume_period(
    g: Graph, exhausted: BudgetExhausted, budget: int = DEFAULT_BUDGET
) -> Result[PeriodReport, BudgetExhausted]:
    """Continue a budget-exhausted run from its carried configuration"""
    offset: int = exhausted.resume_from
    match detect_period(g, exhausted.config, budget):
        case Ok(report):
            report.pre_period += offset
            report.steps_used += exhausted.steps_used
            report.start_time = offset
            report.resumed = True
            return Ok(report)
        case Err(more):
            more.steps_used += exhausted.steps_used
            more.resume_from += offset
            return Err(more)
    raise RuntimeError("unreachable")


def is_fixed(g: Graph, c: Config) -> bool:
    c = as_config(c)
    check_length(g, c)
    return bool(np.all(_edge_signs(g, c) == 0))


def has_property_plus(g: Graph, c: Config) -> bool:
    """For every edge uv: c(u) < c(v) implies c'(u) > c'(v), and
    c(u) = c(v) implies c'(u) = c'(v), where c' = fire(g, c)"""
    c = as_config(c)
    return _property_plus(g, c, fire(g, c))


def first_property_plus_time(
    g: Graph, c0: Config, budget: int = DEFAULT_BUDGET
) -> Result[int, NotFound]:
    """Minimal t <= budget with property plus at c_t"""
    if budget < 0:
        raise InvalidParams(f"budget must be >= 0: {budget}")
    c: Config = as_config(c0)
    check_length(g, c)
    c1: Config = fire(g, c)
    for t in range(budget + 1):
        if _property_plus(g, c, c1):
            if not np.array_equal(fire(g, c1), c):
                raise CertificateViolation(f"property plus at t={t} but c_t+2 != c_t")
            return Ok(t)
        c, c1 = c1, fire(g, c1)
    return Err(NotFound(budget=budget))
