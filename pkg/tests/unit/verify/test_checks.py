from pathlib import Path

import pytest

from cayley_isoperimetry.cayley.search import SearchConfig
from cayley_isoperimetry.groups.abelian import CyclicGroup, FreeAbelianGroup
from cayley_isoperimetry.groups.base import GroupBackend
from cayley_isoperimetry.groups.finite_table import FiniteTableGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.symmetric_set import build_symmetric_set
from cayley_isoperimetry.groups.zoo import KLEIN_FOUR_TABLE, ZOO
from cayley_isoperimetry.model.report import AssertionRecord
from cayley_isoperimetry.verify import checks
from cayley_isoperimetry.verify.selfcheck import (
    SelfcheckReport,
    _guarded,
    counting_total,
    instance_checks,
    run_selfcheck,
    trials_per_pair,
)


def _all_passed(records: list) -> bool:
    return bool(records) and all(r.passed for r in records)


def test_group_axioms_and_counting_identity() -> None:
    group = FreeGroup(2)
    standard = build_symmetric_set(group, {"kind": "standard"})
    squared = build_symmetric_set(group, {"kind": "power", "k": 2})
    records = checks.check_counting_identity(
        "F2", group, [standard, squared], trials=50
    )
    assert [r.check_id for r in records] == [
        "cayley.counting_identity.F2.standard",
        "cayley.counting_identity.F2.standard^2",
    ]
    assert _all_passed(records)


@pytest.mark.parametrize("name", list(ZOO))
def test_group_axioms_on_random_words(name: str) -> None:
    records = checks.check_group_axioms(name, ZOO[name]())
    assert [r.check_id for r in records] == [
        f"groups.associativity.{name}",
        f"groups.identity.{name}",
        f"groups.inverse.{name}",
    ]
    assert _all_passed(records)
    assert records[0].detail == "1000 word triples, 0 failures"


def test_group_axioms_catch_a_broken_multiplication() -> None:
    class Skewed(CyclicGroup):
        def multiply(self, g: int, h: int) -> int:
            return (g + 2 * h) % self.n

    records = checks.check_group_axioms("Z/5", Skewed(5), samples=200)
    assert not records[0].passed
    assert "200 word triples" in records[0].detail


def test_mohar_is_skipped_without_exact_values() -> None:
    group = FreeGroup(2)
    ball2 = build_symmetric_set(group, {"kind": "ball", "radius": 2})
    assert checks.check_mohar("F2", group, ball2) == []
    standard = build_symmetric_set(group, {"kind": "standard"})
    assert _all_passed(checks.check_mohar("F2", group, standard))


def test_free_mohar_equality() -> None:
    records = checks.check_free_mohar_equality()
    assert _all_passed(records)
    assert records[0].check_id == "spectral.mohar_search.F2"


def test_nprime_identity_on_finite_groups() -> None:
    group = FiniteTableGroup(KLEIN_FOUR_TABLE)
    for kind in ({"kind": "standard"}, {"kind": "power", "k": 2}):
        s = build_symmetric_set(group, kind)
        records = checks.check_nprime_identity("K4", group, s)
        assert _all_passed(records)
    assert checks.check_nprime_identity(
        "F2", FreeGroup(2), build_symmetric_set(FreeGroup(2), {"kind": "standard"})
    ) == []


def test_global_formula_suites() -> None:
    assert _all_passed(checks.check_box_trick(seed=1, trials=50))
    assert _all_passed(checks.check_free_t1(truncation=3))
    assert _all_passed(checks.check_cogrowth())
    assert _all_passed(checks.check_burnside())
    assert _all_passed(checks.check_colouring_fixtures())
    assert _all_passed(checks.check_determinism(seed=2))


def test_forest_and_colouring_suites() -> None:
    group = CyclicGroup(4)
    standard = build_symmetric_set(group, {"kind": "standard"})
    records = checks.check_forest("Z/4", group, standard, samples=2000, seed=0)
    assert _all_passed(records)
    assert {r.check_id for r in records} >= {
        "forests.edge_sum.Z/4",
        "forests.inequality.Z/4.p1",
    }
    assert _all_passed(checks.check_colouring("Z/4", group, standard))
    assert checks.check_forest("F2", FreeGroup(2), standard) == []


def test_conservation_suite() -> None:
    group = FreeGroup(2)
    records = checks.check_conservation(
        "F2", group, build_symmetric_set(group, {"kind": "standard"}), k_max=4
    )
    assert [r.check_id for r in records] == [
        "spectral.conservation.F2",
        "spectral.monotone.F2",
        "spectral.below_analytic.F2",
        "spectral.kesten.F2",
    ]
    assert _all_passed(records)
    # exponential growth hits the support cap before 2k=24
    assert "support cap 50000" in records[0].detail
    assert "of 24" in records[0].detail


@pytest.mark.parametrize(
    "name, group",
    [
        ("Z/5", CyclicGroup(5)),
        ("Z^2", FreeAbelianGroup(2)),
        ("K4", FiniteTableGroup(KLEIN_FOUR_TABLE)),
    ],
)
def test_conservation_reaches_twenty_four_steps(name: str, group: GroupBackend) -> None:
    records = checks.check_conservation(
        name, group, build_symmetric_set(group, {"kind": "standard"})
    )
    conservation = records[0]
    assert conservation.check_id == f"spectral.conservation.{name}"
    assert conservation.passed
    assert conservation.detail == "reached 2k=24 of 24"


def test_conservation_may_stop_early_when_support_outgrows_the_cap() -> None:
    group = FreeAbelianGroup(3)
    standard = build_symmetric_set(group, {"kind": "standard"})
    records = checks.check_conservation(
        "Z^3", group, standard, k_max=3, max_support=5_000
    )
    assert records[0].passed
    assert "support cap 5000" in records[0].detail
    # a cap below the a priori support bound is not a failure
    square = FreeAbelianGroup(2)
    records = checks.check_conservation(
        "Z^2",
        square,
        build_symmetric_set(square, {"kind": "standard"}),
        max_support=100,
    )
    assert records[0].passed
    assert "support cap 100" in records[0].detail


def test_instance_checks_on_cyclic_group() -> None:
    records = instance_checks("Z/5", CyclicGroup(5), seed=0)
    assert _all_passed(records)
    assert any(r.check_id.startswith("forests.") for r in records)


def test_counting_trials_cover_the_zoo() -> None:
    assert trials_per_pair(len(ZOO)) == 500
    assert trials_per_pair(1) == 5000
    assert trials_per_pair(40) == 500
    records = [
        AssertionRecord(f"cayley.counting_identity.G{i}.standard", "a", True)
        for i in range(20)
    ]
    total = counting_total(records, trials_per_pair(10))
    assert total.check_id == "cayley.counting_identity.total"
    assert total.passed
    assert total.detail.startswith("10000 (F, S) triples over 20 instance-set pairs")
    assert not counting_total(records[:19], 500).passed


def test_guarded_turns_toolkit_errors_into_failures() -> None:
    def broken() -> list:
        SearchConfig(strategies=("annealing",))
        return []

    records = _guarded("cayley.search", checks.ANCHOR_COUNTING, broken)
    assert len(records) == 1
    assert not records[0].passed
    assert "annealing" in records[0].detail


def test_selfcheck_report_matrix() -> None:
    report = SelfcheckReport(
        records=[
            AssertionRecord("groups.identity.F2", "a", True),
            AssertionRecord("groups.identity.Z", "a", False),
            AssertionRecord("determinism.search_replay", "b", True),
        ]
    )
    assert not report.all_passed
    assert report.failed_checks == ["groups.identity.Z"]
    assert report.matrix() == {
        "groups.identity": {"F2": True, "Z": False},
        "determinism.search_replay": {"-": True},
    }


@pytest.mark.slow
def test_selfcheck_reports_corrupted_table(tmp_path: Path) -> None:
    corrupted = tmp_path / "broken.csv"
    corrupted.write_text("0,1,2\n1,1,0\n2,0,1\n")
    report = run_selfcheck(
        seed=0, extra_tables=[corrupted], zoo={"Z/4": CyclicGroup(4)}
    )
    assert report.failed_checks == ["groups.table.table:broken.csv"]


@pytest.mark.slow
def test_selfcheck_passes_on_zoo() -> None:
    report = run_selfcheck(seed=0)
    assert report.all_passed, report.failed_checks
    by_id = {r.check_id: r for r in report.records}
    total = by_id["cayley.counting_identity.total"]
    assert total.detail.startswith("10000 (F, S) triples over 20 instance-set pairs")
    assert by_id["spectral.conservation.Z/5"].detail == "reached 2k=24 of 24"
