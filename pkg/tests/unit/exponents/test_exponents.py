import math

import pytest

from cayley_isoperimetry.exceptions import InputError, ParameterError
from cayley_isoperimetry.exponents.classification import GroupFacts, classify
from cayley_isoperimetry.exponents.terms import (
    ExponentDepth,
    eta_from_lit,
    exponent_terms,
    family_sets,
    lit_from_eta,
)
from cayley_isoperimetry.groups.abelian import CyclicGroup, FreeAbelianGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.model.report import Provenance


def test_lit_eta_conversions() -> None:
    assert lit_from_eta(0.0) == 1.0
    assert lit_from_eta(0.5) == pytest.approx(2.0)
    assert math.isinf(lit_from_eta(1.0))
    assert eta_from_lit(2.0) == pytest.approx(0.5)
    assert eta_from_lit(math.inf) == 1.0
    with pytest.raises(ParameterError):
        lit_from_eta(1.5)
    with pytest.raises(ParameterError):
        eta_from_lit(0.5)


def test_exponent_terms_on_free_ranks() -> None:
    report = exponent_terms(FreeGroup(2), {"kind": "ranks", "values": [2, 3]})
    first, second = report.records
    assert first.eta_term.as_float() == pytest.approx(0.5)
    assert first.r_term.as_float() == pytest.approx(0.1037, abs=1e-4)
    assert second.eta_term.as_float() == pytest.approx(math.log(3) / math.log(6))
    assert second.r_term.as_float() == pytest.approx(0.164, abs=1e-3)
    assert first.exact
    assert first.sandwich_holds
    assert first.kesten_holds
    assert first.in_range

    assert report.eta_estimate.provenance == Provenance.ESTIMATE
    assert report.lit_estimate.as_float() == pytest.approx(2.0)
    assert [size for size, _, _ in report.running_infimum] == [4, 6]
    assert report.summary()["sizes"] == [4, 6]

    classification = classify(report, GroupFacts.from_backend(FreeGroup(2)))
    assert classification.band == "2"
    assert classification.lit == pytest.approx(2.0)


def test_finite_group_terms_vanish() -> None:
    group = CyclicGroup(6)
    report = exponent_terms(group, {"kind": "balls", "values": [1, 2]})
    assert [r.size for r in report.records] == [2, 4]
    assert all(r.eta_term.as_float() == 0 for r in report.records)
    assert all(r.r_term.as_float() == 0 for r in report.records)
    classification = classify(report, GroupFacts.from_backend(group))
    assert classification.band == "0"
    assert classification.lit == 0.0
    assert classification.statements[0].applies is True


def test_amenable_group_is_in_band_one() -> None:
    group = FreeAbelianGroup(1)
    report = exponent_terms(group, {"kind": "balls", "values": [1, 2]})
    classification = classify(report, GroupFacts.from_backend(group, rapid_decay=True))
    assert classification.band == "1"
    assert classification.statements[1].applies is True
    assert any("RD" in s.text for s in classification.statements)


def test_searched_terms_are_upper_bounds() -> None:
    depth = ExponentDepth.from_dict(
        {
            "search": {"pool_radius": 1, "strategies": ["nested_balls"]},
            "k_max": 3,
            "prefer_analytic": False,
        }
    )
    report = exponent_terms(FreeGroup(2), {"kind": "balls", "values": [1, 2]}, depth)
    for record in report.records:
        assert record.eta_term.provenance == Provenance.UPPER_BOUND
        assert record.r_term.provenance == Provenance.UPPER_BOUND
        assert record.sandwich_holds is None
        assert record.kesten_holds is None
    assert report.eta_estimate.provenance == Provenance.UPPER_BOUND


def test_family_sets_kinds() -> None:
    group = FreeAbelianGroup(2)
    boxes = family_sets(group, {"kind": "boxes", "values": [1, 2]})
    assert [s.label for _, s in boxes] == ["box1", "box2"]
    listed = family_sets(group, {"kind": "list", "sets": [{"kind": "standard"}]})
    assert listed[0][1].size == 4
    ranks = family_sets(group, {"kind": "ranks", "values": [3]})
    assert isinstance(ranks[0][0], FreeGroup)


def test_family_errors() -> None:
    group = FreeGroup(2)
    with pytest.raises(InputError, match="Unknown set family"):
        family_sets(group, {"kind": "cones", "values": [1]})
    with pytest.raises(InputError):
        family_sets(group, {"kind": "balls", "values": []})
    with pytest.raises(InputError):
        family_sets(group, {"kind": "list"})
    with pytest.raises(InputError, match="distinct sizes"):
        exponent_terms(group, {"kind": "balls", "values": [1]})
