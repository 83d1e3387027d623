from fractions import Fraction

import networkx as nx
import pytest

from cayley_isoperimetry.colouring.degeneracy import (
    colourcor_experiment,
    degeneracy_colouring,
)
from cayley_isoperimetry.exceptions import InputError, ParameterError
from cayley_isoperimetry.groups.abelian import CyclicGroup
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.symmetric_set import (
    SymmetricSet,
    standard_generating_set,
)


@pytest.mark.parametrize(
    "graph, colours",
    [
        (nx.cycle_graph(5), 3),
        (nx.cycle_graph(6), 2),
        (nx.complete_graph(4), 4),
        (nx.path_graph(7), 2),
    ],
)
def test_degeneracy_colouring_fixtures(graph: nx.Graph, colours: int) -> None:
    report = degeneracy_colouring(graph)
    assert report.colours_used == colours
    assert report.proper
    assert report.within_degeneracy_bound
    assert report.within_mad_bound is None


def test_degeneracy_of_complete_graph() -> None:
    report = degeneracy_colouring(nx.complete_graph(4), mad_bound=Fraction(3))
    assert report.degeneracy == 3
    assert report.within_mad_bound
    assert [row["vertex"] for row in report.rows()] == ["0", "1", "2", "3"]


def test_colouring_rejects_loops() -> None:
    graph = nx.path_graph(3)
    graph.add_edge(1, 1)
    with pytest.raises(InputError, match="loops"):
        degeneracy_colouring(graph)


def test_colourcor_on_cycle() -> None:
    group = CyclicGroup(6)
    s = standard_generating_set(group)
    result = colourcor_experiment(group, s, alpha=1.0, radius=3)
    assert result.report.vertex_count == 6
    assert result.report.colours_used == 2
    assert result.target == 2
    assert result.meets_target
    assert not colourcor_experiment(group, s, alpha=2.0, radius=3).meets_target


def test_colourcor_drops_identity_from_set() -> None:
    group = CyclicGroup(4)
    s = SymmetricSet.from_elements(group, [0, 1, 3], "loops")
    result = colourcor_experiment(group, s, alpha=1.0, radius=2)
    assert result.set_size == 2
    assert result.report.proper


def test_colourcor_on_free_ball_is_two_colourable() -> None:
    group = FreeGroup(2)
    result = colourcor_experiment(
        group,
        standard_generating_set(group),
        alpha=2.0,
        radius=3,
        mad_bound=Fraction(2),
    )
    assert result.report.vertex_count == 53
    assert result.report.colours_used == 2
    assert result.report.degeneracy == 1
    assert result.report.within_mad_bound
    assert result.to_dict()["target"] == 2


def test_colourcor_rejects_alpha() -> None:
    group = CyclicGroup(6)
    with pytest.raises(ParameterError):
        colourcor_experiment(group, standard_generating_set(group), alpha=0, radius=1)
