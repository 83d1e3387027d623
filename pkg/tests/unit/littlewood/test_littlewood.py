import math
from fractions import Fraction

import pytest

from cayley_isoperimetry.cayley.search import SearchConfig
from cayley_isoperimetry.exceptions import DomainError, InputError, ParameterError
from cayley_isoperimetry.groups.abelian import CyclicGroup, FreeAbelianGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.symmetric_set import ball, standard_generating_set
from cayley_isoperimetry.littlewood.box import box_trick, zeta
from cayley_isoperimetry.littlewood.decomposition import (
    free_t1_certificate,
    t1_ratio_scan,
)
from cayley_isoperimetry.littlewood.norms import lp_norm, nprime_lower, pair_density
from cayley_isoperimetry.littlewood.quotient import QuotientMap, quotient_lift
from cayley_isoperimetry.model.report import Provenance, Quantity
from cayley_isoperimetry.spectral.convolution import FiniteSupportFunction


@pytest.fixture
def free2() -> FreeGroup:
    return FreeGroup(2)


def test_lp_norms() -> None:
    f = FiniteSupportFunction({0: 3, 1: -4})
    assert lp_norm(f, 2) == pytest.approx(5.0)
    assert lp_norm(f, 1) == 7
    assert lp_norm(f, math.inf) == 4
    assert lp_norm(FiniteSupportFunction(), 2) == 0
    with pytest.raises(ParameterError):
        lp_norm(f, 0.5)


def test_pair_density_on_star(free2: FreeGroup) -> None:
    s = standard_generating_set(free2)
    f = FiniteSupportFunction.indicator(s.elements)
    assert pair_density(free2, f, ball(free2, s.elements, 1)) == Fraction(8, 5)
    with pytest.raises(InputError):
        pair_density(free2, f, [])


def test_nprime_of_free_generators_on_small_pool(free2: FreeGroup) -> None:
    f = FiniteSupportFunction.indicator(free2.generator_elements())
    estimate = nprime_lower(free2, f, SearchConfig(pool_radius=2))
    assert estimate.value == Fraction(32, 17)
    assert estimate.pool_optimal
    assert not estimate.exact
    assert estimate.provenance == Provenance.LOWER_BOUND
    assert pair_density(free2, f, list(estimate.witness)) == estimate.value


def test_nprime_on_finite_group_is_exact() -> None:
    group = CyclicGroup(6)
    f = FiniteSupportFunction.indicator(group.generator_elements())
    estimate = nprime_lower(group, f)
    assert estimate.value == 2
    assert estimate.exact
    assert estimate.quantity().provenance == Provenance.EXACT


def test_nprime_uses_absolute_values() -> None:
    group = CyclicGroup(6)
    signed = FiniteSupportFunction({1: -1, 5: 1})
    assert nprime_lower(group, signed).value == 2


def test_nprime_rejects_zero_function(free2: FreeGroup) -> None:
    with pytest.raises(InputError):
        nprime_lower(free2, FiniteSupportFunction())


def test_with_cross_check(free2: FreeGroup) -> None:
    f = FiniteSupportFunction.indicator(free2.generator_elements())
    estimate = nprime_lower(free2, f, SearchConfig(pool_radius=1))
    checked = estimate.with_cross_check(Quantity(Fraction(2), Provenance.ANALYTIC))
    assert checked.cross_check.value == 2
    assert checked.value == estimate.value


def test_zeta() -> None:
    assert zeta(2) == pytest.approx(math.pi**2 / 6)
    with pytest.raises(ParameterError):
        zeta(1)


def test_box_trick_picks_smallest_maximiser() -> None:
    f = FiniteSupportFunction({0: 4, 1: 1, 2: 1, 3: 1})
    box = box_trick(f, p=2, q=1)
    assert box.width == 1
    assert box.height == 4
    assert box.support == [0]
    assert box.certified
    assert box.guarantee == pytest.approx(math.sqrt(19) / math.sqrt(zeta(2)))
    assert box.as_function()[0] == 4


def test_box_trick_on_flat_function() -> None:
    f = FiniteSupportFunction.indicator(range(10), height=0.5)
    box = box_trick(f, p=3, q=1)
    assert box.width == 10
    assert box.q_norm == pytest.approx(5.0)
    assert box.ratio >= 1


@pytest.mark.parametrize("p, q", [(1, 2), (2, 2), (math.inf, 1), (2, 0)])
def test_box_trick_rejects_exponents(p: float, q: float) -> None:
    with pytest.raises(ParameterError):
        box_trick(FiniteSupportFunction({0: 1}), p=p, q=q)


def test_box_trick_rejects_bad_functions() -> None:
    with pytest.raises(ParameterError):
        box_trick(FiniteSupportFunction({0: -1}), p=2, q=1)
    with pytest.raises(InputError):
        box_trick(FiniteSupportFunction(), p=2, q=1)


def test_free_t1_certificate(free2: FreeGroup) -> None:
    certificate = free_t1_certificate(
        free2, standard_generating_set(free2), truncation=2
    )
    assert certificate.row_sup == 1
    assert certificate.column_sup == 1
    assert certificate.bound == 2
    assert certificate.domain_size == 17
    assert certificate.to_dict()["bound"] == 2.0


def test_free_t1_certificate_errors(free2: FreeGroup) -> None:
    group = FreeAbelianGroup(1)
    with pytest.raises(DomainError):
        free_t1_certificate(group, standard_generating_set(group), truncation=2)
    with pytest.raises(ParameterError):
        free_t1_certificate(free2, standard_generating_set(free2), truncation=-1)


def test_t1_ratio_scan_decreases_with_rank() -> None:
    points = t1_ratio_scan([2, 3, 4], p=2)
    assert points[0].ratio == pytest.approx(1.0)
    assert points[1].ratio == pytest.approx(2 / math.sqrt(6))
    assert points[2].ratio < points[1].ratio < points[0].ratio
    assert all(point.certificate == 2 for point in points)


def test_quotient_lift_preserves_norms() -> None:
    quotient = QuotientMap.integers_mod(3)
    f = FiniteSupportFunction({0: 1, 2: 5})
    lifted = quotient_lift(f, quotient)
    assert lifted.values == {(0,): 1, (2,): 5}
    for p in (1, 2, math.inf):
        assert lp_norm(lifted, p) == pytest.approx(lp_norm(f, p))


def test_quotient_lift_errors() -> None:
    with pytest.raises(InputError, match="No representative"):
        quotient_lift(FiniteSupportFunction({7: 1}), QuotientMap.integers_mod(3))
    broken = QuotientMap(projection=lambda x: 0, section={0: (0,), 1: (1,)})
    with pytest.raises(InputError, match="does not project"):
        quotient_lift(FiniteSupportFunction({1: 1}), broken)
    shared = QuotientMap(projection=lambda x: x[0] % 2, section={0: (0,), 1: (0,)})
    with pytest.raises(InputError):
        quotient_lift(FiniteSupportFunction({0: 1, 1: 1}), shared)
