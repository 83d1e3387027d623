import logging
import math
from typing import Dict, List, Sequence, Union

import networkx as nx
import numpy as np

from cayley_isoperimetry.forests.marginals import (
    EdgeKey,
    MonteCarloMarginals,
    check_spanning_input,
    edge_key,
)

logger = logging.getLogger(__name__)

Seed = Union[int, Sequence[int]]


def wilson_sample(graph: nx.Graph, seed: Seed) -> nx.Graph:
    """Uniform spanning tree by loop-erased random walks.

    Vertices and neighbour lists are visited in sorted order and the walk is
    driven by ``numpy.random.default_rng(seed)``, so a seed fixes the tree.

    Raises:
        InputError: disconnected or oversized graph
    """
    nodes = check_spanning_input(graph)
    neighbours = {
        u: sorted((v for v in graph.neighbors(u) if v != u), key=str) for u in nodes
    }
    rng = np.random.default_rng(seed)

    in_tree = {nodes[0]}
    successor = {}
    for start in nodes:
        u = start
        while u not in in_tree:
            options = neighbours[u]
            successor[u] = options[int(rng.integers(len(options)))]
            u = successor[u]
        # retrace the loop-erased path
        u = start
        while u not in in_tree:
            in_tree.add(u)
            u = successor[u]

    tree = nx.Graph()
    tree.add_nodes_from(nodes)
    tree.add_edges_from((u, successor[u]) for u in nodes[1:])
    return tree


def sample_spanning_trees(graph: nx.Graph, n: int, seed: int) -> List[nx.Graph]:
    """n independent Wilson samples, sample i seeded with (seed, i)."""
    return [wilson_sample(graph, [seed, i]) for i in range(n)]


def monte_carlo_marginals(trees: Sequence[nx.Graph]) -> MonteCarloMarginals:
    """Empirical edge frequencies over sampled trees."""
    n = len(trees)
    counts: Dict[EdgeKey, int] = {}
    for tree in trees:
        for u, v in tree.edges:
            key = edge_key(u, v)
            counts[key] = counts.get(key, 0) + 1
    mean = {key: c / n for key, c in counts.items()}
    stderr = {key: math.sqrt(m * (1 - m) / n) for key, m in mean.items()}
    logger.debug(f"Monte Carlo marginals from {n} trees over {len(counts)} edges")
    return MonteCarloMarginals(samples=n, mean=mean, stderr=stderr)
