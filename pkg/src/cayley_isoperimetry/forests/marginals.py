"""Exact uniform-spanning-tree edge marginals.

For unit conductances the probability that edge uv lies in a uniform
spanning tree equals the effective resistance between u and v. Resistances
come from Laplacian solves with one grounded vertex.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import networkx as nx
import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import cg

from cayley_isoperimetry.exceptions import InputError

logger = logging.getLogger(__name__)

MAX_VERTICES = 2000
CG_TOLERANCE = 1e-12

EdgeKey = Tuple[str, str]


def edge_key(u: Any, v: Any) -> EdgeKey:
    a, b = str(u), str(v)
    return (a, b) if a <= b else (b, a)


@dataclass
class ForestMarginals:
    """Edge inclusion probabilities of the uniform spanning tree.

    Attributes:
        edge_marginals: P(edge ∈ tree) per edge
        vertex_count: |V|
        f_mu: g ↦ P((e, g) ∈ tree) for g ∈ S; only for transitive Cayley graphs
        transitive: The graph is a full Cayley graph, so f_mu is well defined
    """

    edge_marginals: Dict[EdgeKey, float]
    vertex_count: int
    f_mu: Dict[str, float] = field(default_factory=dict)
    transitive: bool = False

    @property
    def edge_sum(self) -> float:
        return sum(self.edge_marginals.values())

    @property
    def degree(self) -> float:
        """deg(μ) = Σ_g f_μ(g)."""
        return sum(self.f_mu.values())

    @property
    def width(self) -> int:
        return sum(1 for value in self.f_mu.values() if value > 0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertex_count": self.vertex_count,
            "edge_count": len(self.edge_marginals),
            "edge_sum": self.edge_sum,
            "f_mu": dict(sorted(self.f_mu.items())),
            "degree": self.degree,
            "width": self.width,
            "transitive": self.transitive,
        }


@dataclass
class MonteCarloMarginals:
    """Sampled edge frequencies with binomial standard errors."""

    samples: int
    mean: Dict[EdgeKey, float]
    stderr: Dict[EdgeKey, float]

    def within(self, exact: ForestMarginals, sigmas: float = 4.0) -> bool:
        """Every exact marginal lies within ``sigmas`` standard errors of its mean."""
        for key, value in exact.edge_marginals.items():
            spread = max(self.stderr.get(key, 0.0), 1.0 / self.samples)
            if abs(self.mean.get(key, 0.0) - value) > sigmas * spread:
                return False
        return True


def load_edgelist(path: Union[str, Path]) -> nx.Graph:
    """Read a "u v" per line edge list; such graphs are not treated as transitive."""
    try:
        graph = nx.read_edgelist(str(path), nodetype=str, data=False)
    except (TypeError, ValueError) as e:
        raise InputError(f"Could not parse edge list {path}: {e}")
    graph.remove_edges_from(list(nx.selfloop_edges(graph)))
    graph.graph["transitive"] = False
    return graph


def check_spanning_input(graph: nx.Graph) -> List[Any]:
    """Sorted vertex list of a connected graph within the size cap.

    Raises:
        InputError: empty, too large or disconnected graph
    """
    if graph.number_of_nodes() == 0:
        raise InputError("Graph has no vertices")
    if graph.number_of_nodes() > MAX_VERTICES:
        raise InputError(
            f"Graph has {graph.number_of_nodes()} vertices, "
            f"above the cap of {MAX_VERTICES}"
        )
    if not nx.is_connected(graph):
        raise InputError("Spanning trees need a connected graph")
    return sorted(graph.nodes, key=str)


def ust_marginals_exact(graph: nx.Graph) -> ForestMarginals:
    """Edge marginals as effective resistances.

    Raises:
        InputError: disconnected graph or more than MAX_VERTICES vertices
    """
    nodes = check_spanning_input(graph)
    index = {u: i for i, u in enumerate(nodes)}
    edges = [(u, v) for u, v in graph.edges if u != v]

    marginals: Dict[EdgeKey, float] = {}
    if len(nodes) > 1:
        laplacian = nx.laplacian_matrix(graph, nodelist=nodes).astype(float).tocsr()
        # ground vertex 0
        reduced = laplacian[1:, 1:].tocsr()
        preconditioner = sp.diags(1.0 / reduced.diagonal())
        for u, v in edges:
            rhs = np.zeros(len(nodes))
            rhs[index[u]] += 1.0
            rhs[index[v]] -= 1.0
            solution, info = cg(
                reduced, rhs[1:], rtol=CG_TOLERANCE, atol=0.0, M=preconditioner
            )
            if info != 0:
                logger.warning(
                    f"Conjugate gradient stalled on edge {u}-{v} (info {info})"
                )
            potentials = np.concatenate(([0.0], solution))
            drop = potentials[index[u]] - potentials[index[v]]
            marginals[edge_key(u, v)] = float(drop)

    result = ForestMarginals(edge_marginals=marginals, vertex_count=len(nodes))
    attach_identity_function(graph, result)
    logger.debug(
        f"UST marginals on {len(nodes)} vertices: edge sum {result.edge_sum:.10f}, "
        f"expected {len(nodes) - 1}"
    )
    return result


def attach_identity_function(graph: nx.Graph, marginals: ForestMarginals) -> None:
    """Fill f_μ from the edges at the root of a full Cayley graph.

    The neighbour of the identity along s is s itself, so the edge to
    encoding ``s`` carries f_μ(s).
    """
    if not graph.graph.get("transitive"):
        return
    root = graph.graph["root"]
    marginals.f_mu = {
        s: marginals.edge_marginals.get(edge_key(root, s), 0.0)
        for s in graph.graph.get("generators", [])
    }
    marginals.transitive = True


def marginal_rows(
    exact: ForestMarginals, monte_carlo: Optional[MonteCarloMarginals] = None
) -> List[Dict[str, Any]]:
    """Rows (u, v, exact, mc_mean, mc_stderr) for CSV export."""
    rows = []
    for key in sorted(exact.edge_marginals):
        row: Dict[str, Any] = {
            "u": key[0],
            "v": key[1],
            "exact": exact.edge_marginals[key],
        }
        if monte_carlo is not None:
            row["mc_mean"] = monte_carlo.mean.get(key)
            row["mc_stderr"] = monte_carlo.stderr.get(key)
        rows.append(row)
    return rows
