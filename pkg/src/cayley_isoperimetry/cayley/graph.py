from typing import Iterable, Optional

import networkx as nx

from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.symmetric_set import SymmetricSet


def cayley_graph(
    backend: GroupBackend,
    generating_set: SymmetricSet,
    vertices: Optional[Iterable[Element]] = None,
) -> nx.Graph:
    """Simple graph on ``vertices`` with edges {x, xs}, s ∈ S, loops dropped.

    Nodes are canonical element encodings; the group element is kept in the
    ``element`` node attribute. Without ``vertices`` the whole (finite) group
    is used; otherwise the induced subgraph on the given vertices is built.
    """
    members = list(backend.elements() if vertices is None else vertices)
    member_set = set(members)
    graph = nx.Graph()
    for x in members:
        graph.add_node(backend.encode(x), element=x)
    for x in members:
        for s in generating_set.elements:
            if s == backend.identity:
                continue
            y = backend.multiply(x, s)
            if y in member_set:
                graph.add_edge(backend.encode(x), backend.encode(y))
    graph.graph["root"] = backend.encode(backend.identity)
    graph.graph["generators"] = [
        backend.encode(s) for s in generating_set.elements if s != backend.identity
    ]
    graph.graph["transitive"] = vertices is None and backend.is_finite
    return graph
