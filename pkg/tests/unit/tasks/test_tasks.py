import math
from typing import Callable

import pytest

from cayley_isoperimetry.groups.abelian import CyclicGroup
from cayley_isoperimetry.groups.finite_table import FiniteTableGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.zoo import KLEIN_FOUR_TABLE
from cayley_isoperimetry.model.task.base import TaskContext
from cayley_isoperimetry.tasks import TASK_REGISTRY
from cayley_isoperimetry.tasks.cogrowth import CogrowthTask
from cayley_isoperimetry.tasks.colour import ColourTask
from cayley_isoperimetry.tasks.exponents import ExponentsTask
from cayley_isoperimetry.tasks.forest import ForestTask
from cayley_isoperimetry.tasks.invariants import InvariantsTask
from cayley_isoperimetry.tasks.littlewood import LittlewoodTask
from cayley_isoperimetry.tasks.spectral import SpectralTask
from cayley_isoperimetry.tasks.verify import VerifyTask

ContextFactory = Callable[..., TaskContext]


def test_registry_names_match_tasks(make_context: ContextFactory) -> None:
    context = make_context(CyclicGroup(4))
    assert set(TASK_REGISTRY) == {
        "invariants",
        "spectral",
        "littlewood",
        "cogrowth",
        "forest",
        "colour",
        "exponents",
        "verify",
    }
    for task_type, task_class in TASK_REGISTRY.items():
        assert task_class(context).name == task_type


async def test_invariants_on_finite_group(make_context: ContextFactory) -> None:
    context = make_context(CyclicGroup(6), group_label="Z6")
    result = await InvariantsTask(context).execute()
    assert result.success, result.error
    block = result.data["sets"]["standard"]
    assert block["h"] == {"value": 0.0, "provenance": "exact", "exact": "0/1"}
    assert block["e"]["value"] == 1.0
    assert block["mad"]["value"] == 2.0
    assert result.all_passed
    check_ids = [a.check_id for a in result.assertions]
    assert "cayley.counting_identity.witness.standard" in check_ids


async def test_invariants_on_free_group_uses_analytic_value(
    make_context: ContextFactory,
) -> None:
    context = make_context(FreeGroup(2), params={"pool_radius": 2})
    result = await InvariantsTask(context).execute()
    assert result.success, result.error
    block = result.data["sets"]["standard"]
    assert block["h"]["provenance"] == "analytic"
    assert block["h"]["value"] == 2.0
    assert block["search"]["h"]["exact"] == "36/17"
    assert block["search"]["pool_optimal"]
    assert block["edge_density"]["passed"]
    assert result.all_passed
    assert [row["size"] for row in result.curves["cheeger_trend"]] == [1, 5, 17]
    assert context.param_sources["pool_radius"] == {"value": 2, "source": "JOB"}


async def test_invariants_rejects_parameters_above_cap(
    make_context: ContextFactory,
) -> None:
    context = make_context(FreeGroup(2), params={"pool_radius": 9})
    result = await InvariantsTask(context).execute()
    assert not result.success
    assert "cap" in result.error


async def test_invariants_labels_each_set(make_context: ContextFactory) -> None:
    context = make_context(
        FreeGroup(2),
        sets=[{"kind": "standard"}, {"kind": "ball", "radius": 2}],
        params={
            "pool_radius": 1,
            "strategies": ["nested_balls"],
            "counting_trials": 20,
        },
    )
    result = await InvariantsTask(context).execute()
    assert result.success, result.error
    assert list(result.data["sets"]) == ["standard", "ball2"]
    assert result.data["sets"]["ball2"]["h"]["provenance"] == "upper_bound"
    assert result.data["sets"]["ball2"]["e"]["provenance"] == "lower_bound"


async def test_spectral_on_free_group(make_context: ContextFactory) -> None:
    context = make_context(
        FreeGroup(2),
        params={
            "k_max": 4,
            "compression_radii": [1, 2],
            "rd_d_max": 2,
            "rd_trials": 1,
        },
    )
    result = await SpectralTask(context).execute()
    assert result.success, result.error
    block = result.data["sets"]["standard"]
    assert block["rho"]["provenance"] == "analytic"
    assert block["rho"]["value"] == pytest.approx(math.sqrt(3) / 2)
    assert block["mohar"]["passed"]
    assert block["return_probabilities"][0]["p_return"]["exact"] == "1/4"
    assert len(result.curves["return_probability"]) == 4
    assert len(result.curves["compression"]) == 2
    assert len(result.curves["rd_scan"]) == 2
    assert result.all_passed


async def test_spectral_without_rd_scan_has_no_rd_curve(
    make_context: ContextFactory,
) -> None:
    context = make_context(CyclicGroup(5), params={"k_max": 3})
    result = await SpectralTask(context).execute()
    assert result.success, result.error
    assert "rd_scan" not in result.curves
    assert result.data["sets"]["standard"]["rapid_decay"] is None


async def test_spectral_on_large_set_stops_at_support_cap(
    make_context: ContextFactory,
) -> None:
    context = make_context(
        FreeGroup(2),
        sets=[{"kind": "ball", "radius": 2}],
        params={"k_max": 12, "compression_radii": [1]},
    )
    result = await SpectralTask(context).execute()
    assert result.success, result.error
    block = result.data["sets"]["ball2"]
    assert block["truncated_at"] == 12
    assert len(block["return_probabilities"]) == 5
    conservation = next(
        a for a in result.assertions if a.check_id == "spectral.conservation.ball2"
    )
    assert conservation.passed
    assert "stopped before 2k=12 of 24" in conservation.detail


async def test_spectral_rejects_support_above_cap(make_context: ContextFactory) -> None:
    context = make_context(FreeGroup(2), params={"k_max": 2, "max_support": 10**7})
    result = await SpectralTask(context).execute()
    assert not result.success
    assert "exceeds the desk-scale cap" in result.error


async def test_spectral_rejects_radii_above_cap(make_context: ContextFactory) -> None:
    context = make_context(FreeGroup(2), params={"compression_radii": [7]})
    result = await SpectralTask(context).execute()
    assert not result.success
    assert "ParameterError" in result.error


async def test_littlewood_on_cyclic_group(make_context: ContextFactory) -> None:
    context = make_context(CyclicGroup(6), params={"t1_ranks": [2, 3]})
    result = await LittlewoodTask(context).execute()
    assert result.success, result.error
    block = result.data["sets"]["standard"]
    assert block["nprime"]["value"] == 2.0
    assert block["nprime"]["provenance"] == "exact"
    assert block["n_bracket"]["upper"]["value"] == 4.0
    assert block["lp_norms"] == {"1": 2, "2": pytest.approx(math.sqrt(2)), "inf": 1}
    assert block["lift_to_integers"] == {"support": [1, 5], "norms_preserved": True}
    assert result.data["t1_ratio_scan"]["decreasing"]
    assert result.data["box_trick"]["certified"]
    assert result.all_passed
    ids = {a.check_id for a in result.assertions}
    assert {"littlewood.nprime_identity.standard", "littlewood.box_trick.p2q1"} <= ids


async def test_littlewood_on_free_group(make_context: ContextFactory) -> None:
    context = make_context(
        FreeGroup(2), params={"pool_radius": 2, "t1_ranks": [], "t1_truncation": 3}
    )
    result = await LittlewoodTask(context).execute()
    assert result.success, result.error
    block = result.data["sets"]["standard"]
    assert block["nprime"]["provenance"] == "lower_bound"
    assert block["n_bracket"]["upper"] is None
    assert block["t1_certificate"]["bound"] == 2.0
    assert "t1_ratio" not in result.curves
    assert result.all_passed


async def test_cogrowth_of_free_basis(make_context: ContextFactory) -> None:
    result = await CogrowthTask(make_context(FreeGroup(2), group_label="F2")).execute()
    assert result.success, result.error
    assert result.data["injective"]
    assert result.data["rho"]["rho"] == pytest.approx(math.sqrt(3) / 2)
    assert result.data["rho"]["provenance"] == "analytic"


async def test_cogrowth_of_cyclic_quotient(make_context: ContextFactory) -> None:
    context = make_context(
        CyclicGroup(5),
        group_label="Z5",
        params={"images": ["t", "t t"], "k_max": 20, "burnside": {"m": 2, "a": 665}},
    )
    result = await CogrowthTask(context).execute()
    assert result.success, result.error
    assert result.data["images"] == ["1", "2"]
    assert len(result.curves["cogrowth_counts"]) == 20
    assert result.data["estimate"]["point_estimate"] == pytest.approx(3.0, abs=0.01)
    assert result.data["estimate"]["clamped_alpha"] == 3.0
    assert result.data["burnside"]["lit_lower"]["exact"] == "3/2"
    assert result.all_passed


async def test_cogrowth_needs_two_images(make_context: ContextFactory) -> None:
    result = await CogrowthTask(make_context(CyclicGroup(5))).execute()
    assert not result.success
    assert "at least two" in result.error


async def test_forest_on_klein_four(make_context: ContextFactory) -> None:
    context = make_context(
        FiniteTableGroup(KLEIN_FOUR_TABLE), params={"p_values": [1, 2, 3]}
    )
    result = await ForestTask(context).execute()
    assert result.success, result.error
    block = result.data["sets"]["standard"]
    assert block["marginals"]["degree"] == pytest.approx(1.5)
    assert all(report["equality"] for report in block["inequality"])
    assert len(result.curves["ust_marginals"]) == 6
    assert result.all_passed


async def test_forest_refuses_infinite_group(make_context: ContextFactory) -> None:
    result = await ForestTask(make_context(FreeGroup(2))).execute()
    assert not result.success
    assert "DomainError" in result.error


async def test_colour_on_cycle(make_context: ContextFactory) -> None:
    context = make_context(CyclicGroup(6), params={"alpha": 1.0})
    result = await ColourTask(context).execute()
    assert result.success, result.error
    block = result.data["sets"]["standard"]
    assert block["colours_used"] == 2
    assert block["meets_target"]
    assert "colouring.mad.standard" in {a.check_id for a in result.assertions}
    assert result.all_passed


async def test_exponents_on_free_ranks(make_context: ContextFactory) -> None:
    context = make_context(
        FreeGroup(2), params={"family": {"kind": "ranks", "values": [2, 3]}}
    )
    result = await ExponentsTask(context).execute()
    assert result.success, result.error
    assert result.data["classification"]["band"] == "2"
    assert "exponents.sandwich.standard.n4" in {a.check_id for a in result.assertions}
    assert result.all_passed


async def test_exponents_needs_two_sizes(make_context: ContextFactory) -> None:
    result = await ExponentsTask(make_context(FreeGroup(2))).execute()
    assert not result.success
    assert "distinct sizes" in result.error


async def test_verify_on_cyclic_group(make_context: ContextFactory) -> None:
    context = make_context(
        CyclicGroup(4),
        sets=[{"kind": "standard"}, {"kind": "power", "k": 2}],
        group_label="Z4",
    )
    result = await VerifyTask(context).execute()
    assert result.success, result.error
    assert result.data["failed"] == []
    assert result.data["checks"] == len(result.assertions)
