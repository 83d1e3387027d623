from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_isoperimetry.cayley.cheeger import (
    CheegerResult,
    analytic_h,
    cheeger_upper,
    e_and_mad,
)
from cayley_isoperimetry.cayley.counting import subset_stats
from cayley_isoperimetry.cayley.graph import cayley_graph
from cayley_isoperimetry.cayley.search import SearchConfig, densest_subset
from cayley_isoperimetry.exceptions import EmptySetError, InputError, ParameterError
from cayley_isoperimetry.groups.abelian import CyclicGroup, FreeAbelianGroup
from cayley_isoperimetry.groups.finite_table import FiniteTableGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.symmetric_set import (
    SymmetricSet,
    ball,
    build_symmetric_set,
    standard_generating_set,
)
from cayley_isoperimetry.groups.zoo import KLEIN_FOUR_TABLE
from cayley_isoperimetry.model.report import Provenance


def test_subset_stats_on_cycle() -> None:
    group = CyclicGroup(4)
    s = standard_generating_set(group)
    stats = subset_stats(group, s, [0, 1])
    assert stats.boundary == 2
    assert stats.internal_edges == 1
    assert stats.loops == 0
    assert stats.ratio == 1
    assert stats.counting_identity_holds(s.size)


def test_subset_stats_counts_loops() -> None:
    group = CyclicGroup(4)
    s = SymmetricSet.from_elements(group, [0, 1, 3])
    stats = subset_stats(group, s, [0, 1])
    assert stats.loops == 2
    assert stats.internal_edges == 3
    assert stats.counting_identity_holds(3)


def test_subset_stats_rejects_bad_vertex_sets() -> None:
    group = CyclicGroup(4)
    s = standard_generating_set(group)
    with pytest.raises(EmptySetError):
        subset_stats(group, s, [])
    with pytest.raises(InputError):
        subset_stats(group, s, [1, 1])


@settings(max_examples=50, deadline=None)
@given(st.sets(st.sampled_from(range(17)), min_size=1))
def test_counting_identity_on_free_ball_subsets(indices: set) -> None:
    """|F||S| = |∂F| + 2|E(F)| − |L(F)| for arbitrary finite F."""
    group = FreeGroup(2)
    s = standard_generating_set(group)
    members = ball(group, s.elements, 2)
    stats = subset_stats(group, s, [members[i] for i in sorted(indices)])
    assert stats.counting_identity_holds(s.size)


def test_search_config_validation() -> None:
    with pytest.raises(ParameterError, match="Unknown search strategies"):
        SearchConfig(strategies=("annealing",))
    with pytest.raises(ParameterError):
        SearchConfig(pool_radius=-1)
    with pytest.raises(ParameterError):
        SearchConfig(max_subset=0)
    config = SearchConfig.from_dict({"pool_radius": 2, "unknown": 1})
    assert config.pool_radius == 2


def test_cheeger_of_finite_group_is_exact_zero() -> None:
    group = CyclicGroup(6)
    result = cheeger_upper(group, standard_generating_set(group))
    assert result.h == 0
    assert result.exact
    assert result.provenance == Provenance.EXACT
    assert result.e == 1
    assert result.mad == 2


def test_cheeger_of_free_group_on_nested_balls() -> None:
    group = FreeGroup(2)
    result = cheeger_upper(
        group, standard_generating_set(group), SearchConfig(pool_radius=3)
    )
    assert result.h == Fraction(108, 53)
    assert not result.exact
    assert result.provenance == Provenance.UPPER_BOUND
    assert len(result.witness) == 53
    # balls in the 4-regular tree: |∂B|/|B| = 2 + 2/|B|
    assert [(size, h) for size, h in result.trend] == [
        (1, Fraction(4)),
        (5, Fraction(12, 5)),
        (17, Fraction(36, 17)),
        (53, Fraction(108, 53)),
    ]
    assert result.h >= analytic_h(group, standard_generating_set(group))


def test_cheeger_of_integers_is_pool_optimal() -> None:
    group = FreeAbelianGroup(1)
    result = cheeger_upper(
        group, standard_generating_set(group), SearchConfig(pool_radius=3)
    )
    assert result.h == Fraction(2, 7)
    assert result.pool_optimal
    assert len(result.witness) == 7


def test_witness_reproduces_reported_ratio() -> None:
    group = FreeGroup(2)
    s = build_symmetric_set(group, {"kind": "ball", "radius": 2})
    config = SearchConfig(pool_radius=1, strategies=("nested_balls",))
    result = cheeger_upper(group, s, config)
    stats = subset_stats(group, s, list(result.witness))
    assert stats.ratio == result.h


def test_densest_subset_with_no_strategy_falls_back_to_identity() -> None:
    group = FreeGroup(2)
    s = standard_generating_set(group)
    found = densest_subset(
        group, {g: 1 for g in s.elements}, s.elements, SearchConfig(strategies=())
    )
    assert found.witness == (group.identity,)
    assert found.density == 0
    assert found.strategies_run == []


def test_analytic_h() -> None:
    assert analytic_h(FreeGroup(3), standard_generating_set(FreeGroup(3))) == 4
    assert analytic_h(CyclicGroup(5), standard_generating_set(CyclicGroup(5))) == 0
    group = FreeGroup(2)
    ball2 = build_symmetric_set(group, {"kind": "ball", "radius": 2})
    assert analytic_h(group, ball2) is None


def test_e_and_mad_provenance() -> None:
    group = FreeGroup(2)
    s = standard_generating_set(group)
    bound = CheegerResult(
        h=Fraction(108, 53), degree=4, exact=False, provenance=Provenance.UPPER_BOUND
    )
    e, mad = e_and_mad(bound, s)
    assert e.provenance == Provenance.LOWER_BOUND
    assert mad.value == 4 - Fraction(108, 53)

    exact = CheegerResult.from_analytic(Fraction(2), 4)
    e, mad = e_and_mad(exact, s)
    assert e.value == Fraction(1, 2)
    assert mad.value == 2
    assert mad.provenance == Provenance.ANALYTIC


def test_cayley_graph_of_finite_groups() -> None:
    cycle = CyclicGroup(6)
    graph = cayley_graph(cycle, standard_generating_set(cycle))
    assert nx.is_isomorphic(graph, nx.cycle_graph(6))
    assert graph.graph["root"] == "0"
    assert graph.graph["transitive"]

    klein = FiniteTableGroup(KLEIN_FOUR_TABLE)
    complete = cayley_graph(klein, standard_generating_set(klein))
    assert nx.is_isomorphic(complete, nx.complete_graph(4))


def test_cayley_graph_induced_on_ball() -> None:
    group = FreeGroup(2)
    s = standard_generating_set(group)
    graph = cayley_graph(group, s, ball(group, s.elements, 2))
    assert graph.number_of_nodes() == 17
    assert graph.number_of_edges() == 16
    assert nx.is_tree(graph)
    assert not graph.graph["transitive"]
