import pytest  # type: ignore
from pathlib import Path
import logging

from pyutils import awrap

from diffusion_game import PeriodClass, PeriodReport, TrialResult, export
from diffusion_game.exportable import join_ints
from diffusion_game.trials import EXHAUSTED

########################################################
#
# Test Plan
#
########################################################

# 1) Export reports as JSON, read them back and compare
# 2) save_json() / open_json() and the schema tag
# 3) Export rows as CSV, with and without append
# 4) Refuse to overwrite without force

logger = logging.getLogger(__name__)
error = logger.error
message = logger.warning
verbose = logger.info
debug = logger.debug


@pytest.fixture
def period_reports() -> list[PeriodReport]:
    res: list[PeriodReport] = list()
    for pre, period, steps in [(9, 2, 11), (0, 1, 1), (3, 2, 5)]:
        res.append(
            PeriodReport(
                pre_period=pre,
                period=period,
                classification=PeriodClass.of(period),
                steps_used=steps,
                property_plus_at_entry=True,
            )
        )
    return res


@pytest.fixture
def trial_results() -> list[TrialResult]:
    return [
        TrialResult(
            index=0, seed=11, pre_period=4, period=2, classification="tight_period2", steps_used=6
        ),
        TrialResult(index=1, seed=12, pre_period=0, period=1, classification="fixed", steps_used=1),
        TrialResult(index=2, seed=13, classification=EXHAUSTED, steps_used=100),
    ]


@pytest.mark.asyncio
async def test_1_json_export_import(tmp_path: Path, period_reports: list[PeriodReport]) -> None:
    fn: Path = tmp_path / "periods.json"

    await export(awrap(period_reports), format="json", filename="-")
    await export(awrap(period_reports), format="json", filename=fn)
    with pytest.raises(FileExistsError):
        await export(awrap(period_reports), format="json", filename=fn)
    await export(awrap(period_reports), format="json", filename=str(fn.resolve()), force=True)

    lines: list[str] = fn.read_text().splitlines()
    assert len(lines) == len(period_reports), f"{len(lines)} lines exported"
    for line, report in zip(lines, period_reports):
        imported = PeriodReport.parse_str(line)
        assert imported is not None, f"could not parse: {line}"
        assert imported == report, f"imported {imported} != exported {report}"

    await export(awrap(period_reports[:1]), format="json", filename=fn, append=True)
    assert len(fn.read_text().splitlines()) == 4, "append did not add a line"


@pytest.mark.asyncio
async def test_2_save_open_json(tmp_path: Path, period_reports: list[PeriodReport]) -> None:
    report: PeriodReport = period_reports[0]
    fn: Path = tmp_path / "period"
    assert await report.save_json(fn) > 0, f"could not save {report}"
    assert not fn.exists() and fn.with_suffix(".json").exists(), "suffix not added"

    loaded = await PeriodReport.open_json(fn.with_suffix(".json"))
    assert loaded == report, f"loaded {loaded} != saved {report}"
    assert loaded is not None and loaded.schema_id == "diffusion-game/period/1"

    assert await PeriodReport.open_json(tmp_path / "missing.json") is None, "missing file"
    with pytest.raises(OSError):
        await PeriodReport.open_json(tmp_path / "missing.json", exceptions=True)

    obj = report.obj_src()
    assert obj["schema"] == PeriodReport.schema_tag(), "schema tag not exported"
    assert "start_time" in obj and "resumed" in obj, "defaults must be exported"
    tagged = PeriodReport.from_obj({**obj, "schema": "diffusion-game/period/0"})
    assert tagged is not None and tagged.schema_id == "diffusion-game/period/0", (
        "explicit schema tag replaced"
    )
    assert PeriodReport.from_obj({"pre_period": "x"}) is None, "invalid object parsed"


@pytest.mark.asyncio
async def test_3_csv_export(tmp_path: Path, trial_results: list[TrialResult]) -> None:
    fn: Path = tmp_path / "trials.csv"

    await export(awrap(trial_results), format="csv", filename="-")
    await export(awrap(trial_results), format="csv", filename=fn)
    lines: list[str] = fn.read_text().splitlines()
    assert lines[0] == "index,seed,pre_period,period,classification,steps_used", lines[0]
    assert lines[1] == "0,11,4,2,tight_period2,6", f"row 0: {lines[1]}"
    assert lines[3] == f"2,13,,,{EXHAUSTED},100", f"exhausted row: {lines[3]}"

    await export(awrap(trial_results), format="csv", filename=fn, append=True)
    lines = fn.read_text().splitlines()
    assert len(lines) == 7, f"append wrote {len(lines)} lines"
    assert lines.count(lines[0]) == 1, "header written twice"

    with pytest.raises(FileExistsError):
        await export(awrap(trial_results), format="csv", filename=fn)
    with pytest.raises(ValueError):
        await export(awrap(trial_results), format="txt", filename=fn, force=True)  # type: ignore


def test_4_join_ints() -> None:
    assert join_ints([4, -8, 6]) == "4 -8 6", "space separated"
    assert join_ints((1, 2), sep=";") == "1;2", "custom separator"
    assert join_ints([]) == "", "empty vector"
