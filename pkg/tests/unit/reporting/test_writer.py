import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from cayley_isoperimetry.model.report import (
    AssertionRecord,
    InvariantReport,
    Provenance,
    Quantity,
    fraction_to_dict,
    jsonable_number,
)
from cayley_isoperimetry.reporting.writer import (
    canonical_json,
    curve_filename,
    read_report,
    render_summary,
    to_jsonable,
    write_report,
)


@pytest.fixture
def report() -> InvariantReport:
    report = InvariantReport(
        config={"name": "demo", "group": {"type": "cyclic", "n": 6}, "seed": 0}
    )
    report.results["invariants"] = {
        "data": {"h": Quantity(Fraction(2, 7), Provenance.UPPER_BOUND).to_dict()},
        "metrics": {"sets_processed": 1},
    }
    report.task_status = {
        "invariants": {
            "type": "invariants",
            "success": True,
            "error": None,
            "warning": None,
        },
        "norms": {
            "type": "littlewood",
            "success": False,
            "error": "boom",
            "warning": None,
        },
    }
    report.assertions = [
        AssertionRecord("cayley.counting_identity.standard", "counting", True),
        AssertionRecord("task.norms", "task completed without error", False, "boom"),
    ]
    report.timings = {"invariants": 0.5, "norms": 0.25}
    report.curves = {
        "invariants.cheeger_trend": [
            {"size": 1, "h": Fraction(2)},
            {"size": 5, "h": 1.2},
        ],
        "norms.t1_ratio": [],
    }
    return report


def test_quantity_serialisation() -> None:
    assert Quantity(Fraction(36, 17), Provenance.UPPER_BOUND).to_dict() == {
        "value": pytest.approx(36 / 17),
        "provenance": "upper_bound",
        "exact": "36/17",
    }
    assert Quantity(3, Provenance.EXACT).to_dict() == {
        "value": 3,
        "provenance": "exact",
    }
    assert Quantity(math.inf, Provenance.CITED).to_dict()["value"] == "inf"
    assert math.isnan(Quantity(None, Provenance.ESTIMATE).as_float())
    assert Provenance.ANALYTIC.is_exact and not Provenance.LOWER_BOUND.is_exact
    assert jsonable_number(True) is True
    assert fraction_to_dict(Fraction(1, 4)) == {"value": 0.25, "exact": "1/4"}
    assert fraction_to_dict(None) is None


def test_to_jsonable_converts_numeric_types() -> None:
    converted = to_jsonable(
        {
            1: Fraction(1, 2),
            "array": np.array([1, 2]),
            "scalar": np.float64(0.25),
            "flag": np.bool_(True),
            "nan": float("nan"),
            "set": {3, 1},
            "path": Path("out"),
            "kind": Provenance.EXACT,
        }
    )
    assert converted == {
        "1": 0.5,
        "array": [1, 2],
        "scalar": 0.25,
        "flag": True,
        "nan": "nan",
        "set": [1, 3],
        "path": "out",
        "kind": "exact",
    }


def test_canonical_json_is_sorted_and_newline_terminated() -> None:
    text = canonical_json({"b": 1, "a": Fraction(3, 2)})
    assert text == '{\n  "a": 1.5,\n  "b": 1\n}\n'


def test_write_report(tmp_path: Path, report: InvariantReport) -> None:
    paths = write_report(report, tmp_path / "out", extra_timings={"cache": {"hits": 2}})

    data = read_report(paths["report"])
    assert data["summary"] == {
        "assertions_total": 2,
        "assertions_failed": 1,
        "all_passed": False,
    }
    assert data["results"]["invariants"]["data"]["h"]["exact"] == "2/7"
    assert "timings" not in json.dumps(data)

    timings = json.loads(paths["timings"].read_text())
    assert timings["total"] == pytest.approx(0.75)
    assert timings["cache"] == {"hits": 2}

    curve = pd.read_csv(tmp_path / "out" / curve_filename("invariants.cheeger_trend"))
    assert list(curve.columns) == ["size", "h"]
    assert curve["h"].tolist() == [2.0, 1.2]
    assert not (tmp_path / "out" / "norms_t1_ratio.csv").exists()
    assert paths["summary"].exists()


def test_report_is_reproducible(tmp_path: Path, report: InvariantReport) -> None:
    first = write_report(report, tmp_path / "a")["report"].read_bytes()
    report.timings = {"invariants": 9.0, "norms": 1.0}
    second = write_report(report, tmp_path / "b")["report"].read_bytes()
    assert first == second


def test_render_summary(report: InvariantReport) -> None:
    summary = render_summary(report)
    assert summary.startswith("# demo")
    assert "| invariants | invariants | ok |" in summary
    assert "failed: boom" in summary
    assert "1 of 2 assertions passed." in summary
    assert "`task.norms`" in summary
    assert "invariants_cheeger_trend.csv" in summary
    assert "norms_t1_ratio.csv" not in summary
    assert "lower bounds" in summary


def test_curve_filename() -> None:
    assert curve_filename("selfcheck") == "selfcheck.csv"
    assert curve_filename("spectral.rd_scan") == "spectral_rd_scan.csv"
