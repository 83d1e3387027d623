import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cayley_isoperimetry.cogrowth.bounds import burnside_bounds, grigorchuk_rho
from cayley_isoperimetry.cogrowth.counts import reduced_word_counts
from cayley_isoperimetry.cogrowth.estimate import cogrowth_estimate
from cayley_isoperimetry.exceptions import (
    DomainError,
    HypothesisError,
    InputError,
    ParameterError,
    UnsupportedError,
)
from cayley_isoperimetry.groups.abelian import CyclicGroup
from cayley_isoperimetry.groups.finite_table import FiniteTableGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.zoo import SYMMETRIC_THREE_TABLE


def test_grigorchuk_at_range_ends() -> None:
    low = grigorchuk_rho(math.sqrt(3), 2)
    assert low.rho == pytest.approx(math.sqrt(3) / 2)
    assert low.at_lower_boundary
    high = grigorchuk_rho(3.0, 2)
    assert high.rho == pytest.approx(1.0)
    assert high.at_upper_boundary
    assert high.weak_bound == 1.0


@given(st.integers(min_value=2, max_value=8), st.floats(min_value=0.0, max_value=1.0))
def test_grigorchuk_rho_within_weak_bound(m: int, t: float) -> None:
    """ρ(α) lies between the free value and 1 and never exceeds min(α/m, 1)."""
    low, high = math.sqrt(2 * m - 1), 2 * m - 1
    bound = grigorchuk_rho(low + t * (high - low), m)
    assert math.sqrt(2 * m - 1) / m - 1e-12 <= bound.rho <= 1 + 1e-12
    assert bound.rho <= bound.weak_bound + 1e-12


def test_grigorchuk_rejects_out_of_range() -> None:
    with pytest.raises(ParameterError):
        grigorchuk_rho(1.0, 1)
    with pytest.raises(DomainError):
        grigorchuk_rho(1.5, 2)
    with pytest.raises(DomainError):
        grigorchuk_rho(3.5, 2)


def test_burnside_bounds_default_delta() -> None:
    bounds = burnside_bounds(2, 665)
    assert bounds.rho_upper == 1.0
    assert bounds.r_lower == Fraction(1, 3)
    assert bounds.lit_lower == Fraction(3, 2)
    assert bounds.burn_value == pytest.approx(3 ** (-1 / 3))
    assert not bounds.burn_reached
    assert bounds.r_term_lower > 0
    assert bounds.to_dict()["lit_lower"]["exact"] == "3/2"


def test_burnside_burn_reached_for_large_rank() -> None:
    assert burnside_bounds(1000, 667, delta=0.5).burn_reached


@pytest.mark.parametrize("m, a", [(1, 665), (2, 664), (2, 663)])
def test_burnside_hypotheses(m: int, a: int) -> None:
    with pytest.raises(HypothesisError):
        burnside_bounds(m, a)


def test_burnside_delta_range() -> None:
    with pytest.raises(ParameterError):
        burnside_bounds(2, 665, delta=0.4)


def test_counts_for_rank_one_into_z2() -> None:
    counts = reduced_word_counts(1, [1], CyclicGroup(2), k_max=6)
    assert counts.counts == [0, 2, 0, 2, 0, 2]
    assert counts.conservation_ok
    assert counts.rows()[1] == {"k": 2, "c_k": 2}


def test_counts_into_trivial_group() -> None:
    counts = reduced_word_counts(2, [0, 0], CyclicGroup(1), k_max=5)
    assert counts.counts == [4 * 3 ** (k - 1) for k in range(1, 6)]
    estimate = cogrowth_estimate(counts)
    assert estimate.point_estimate == pytest.approx(3.0)
    assert estimate.upper_in_range and estimate.lower_in_range
    assert grigorchuk_rho(estimate.clamped_alpha, 2).rho == pytest.approx(1.0)


def test_counts_into_z2_keep_parity() -> None:
    counts = reduced_word_counts(2, [1, 1], CyclicGroup(2), k_max=6)
    assert counts.counts == [0, 12, 0, 108, 0, 972]
    assert cogrowth_estimate(counts).point_estimate == pytest.approx(3.0)


def test_counts_into_symmetric_group_conserve_words() -> None:
    group = FiniteTableGroup(SYMMETRIC_THREE_TABLE)
    counts = reduced_word_counts(2, [1, 3], group, k_max=8)
    assert counts.conservation_ok
    assert counts.counts[0] == 0
    estimate = cogrowth_estimate(counts)
    assert math.sqrt(3) <= estimate.clamped_alpha <= 3.0


def test_free_basis_has_trivial_kernel() -> None:
    target = FreeGroup(2)
    images = [target.evaluate("b^-1"), target.evaluate("a")]
    counts = reduced_word_counts(2, images, target, k_max=4)
    assert counts.injective
    assert counts.counts == [0, 0, 0, 0]
    estimate = cogrowth_estimate(counts)
    assert estimate.trivial_kernel
    assert estimate.point_estimate is None
    assert estimate.clamped_alpha is None


def test_counts_errors() -> None:
    target = FreeGroup(2)
    with pytest.raises(UnsupportedError):
        a = target.evaluate("a")
        reduced_word_counts(2, [a, a], target, k_max=3)
    with pytest.raises(InputError):
        reduced_word_counts(2, [1], CyclicGroup(2), k_max=3)
    with pytest.raises(ParameterError):
        reduced_word_counts(2, [1, 1], CyclicGroup(2), k_max=0)
    with pytest.raises(ParameterError):
        reduced_word_counts(0, [], CyclicGroup(2), k_max=3)


def test_estimate_clamps_into_range() -> None:
    counts = reduced_word_counts(1, [1], CyclicGroup(2), k_max=6)
    estimate = cogrowth_estimate(counts)
    assert estimate.point_estimate == pytest.approx(1.0)
    assert estimate.root_estimate == pytest.approx(math.sqrt(2))
    assert estimate.clamped_alpha == pytest.approx(1.0)
