import heapq
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import networkx as nx

from cayley_isoperimetry.cayley.graph import cayley_graph
from cayley_isoperimetry.exceptions import InputError, ParameterError
from cayley_isoperimetry.groups.base import GroupBackend
from cayley_isoperimetry.groups.symmetric_set import SymmetricSet, ball

logger = logging.getLogger(__name__)


@dataclass
class ColouringReport:
    """Greedy colouring along a degeneracy order.

    Attributes:
        vertex_count: |V|
        degeneracy: Largest degree met while peeling
        colours_used: Number of distinct colours
        assignment: Vertex → colour id (0-based)
        proper: No edge is monochromatic (full edge scan)
        mad_bound: Optional upper bound on the maximal average degree
    """

    vertex_count: int
    degeneracy: int
    colours_used: int
    assignment: Dict[Any, int] = field(default_factory=dict)
    proper: bool = True
    mad_bound: Optional[Fraction] = None

    @property
    def within_degeneracy_bound(self) -> bool:
        return self.colours_used <= self.degeneracy + 1

    @property
    def within_mad_bound(self) -> Optional[bool]:
        if self.mad_bound is None:
            return None
        return self.colours_used <= math.floor(self.mad_bound) + 1

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {"vertex": str(v), "colour": c}
            for v, c in sorted(self.assignment.items(), key=lambda item: str(item[0]))
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertex_count": self.vertex_count,
            "degeneracy": self.degeneracy,
            "colours_used": self.colours_used,
            "proper": self.proper,
            "mad_bound": None if self.mad_bound is None else float(self.mad_bound),
            "within_degeneracy_bound": self.within_degeneracy_bound,
            "within_mad_bound": self.within_mad_bound,
        }


def degeneracy_colouring(
    graph: nx.Graph,
    key: Callable[[Any], str] = str,
    mad_bound: Optional[Fraction] = None,
) -> ColouringReport:
    """Peel minimum-degree vertices, then colour greedily in reverse order.

    Ties in the peeling are broken by the smallest ``key``.

    Raises:
        InputError: the graph has a loop
    """
    if nx.number_of_selfloops(graph) > 0:
        raise InputError("Colouring input has loops; remove the identity from S first")

    degree = {v: graph.degree(v) for v in graph.nodes}
    heap = [(d, key(v), i, v) for i, (v, d) in enumerate(degree.items())]
    heapq.heapify(heap)
    tiebreak = {v: i for i, v in enumerate(degree)}
    removed = set()
    order = []
    degeneracy = 0
    while heap:
        d, _, _, v = heapq.heappop(heap)
        if v in removed or d != degree[v]:
            continue
        removed.add(v)
        order.append(v)
        degeneracy = max(degeneracy, d)
        for u in graph.neighbors(v):
            if u not in removed:
                degree[u] -= 1
                heapq.heappush(heap, (degree[u], key(u), tiebreak[u], u))

    assignment: Dict[Any, int] = {}
    for v in reversed(order):
        taken = {assignment[u] for u in graph.neighbors(v) if u in assignment}
        colour = 0
        while colour in taken:
            colour += 1
        assignment[v] = colour

    proper = all(assignment[u] != assignment[v] for u, v in graph.edges)
    report = ColouringReport(
        vertex_count=graph.number_of_nodes(),
        degeneracy=degeneracy,
        colours_used=len(set(assignment.values())),
        assignment=assignment,
        proper=proper,
        mad_bound=None if mad_bound is None else Fraction(mad_bound),
    )
    if not proper:
        logger.error("Greedy colouring produced a monochromatic edge")
    return report


@dataclass
class ColourcorResult:
    """Colouring of a Cayley ball against the target ⌊|S|^{1/α}⌋ colours."""

    report: ColouringReport
    alpha: float
    set_size: int
    target: int

    @property
    def meets_target(self) -> bool:
        return self.report.colours_used <= self.target

    def to_dict(self) -> Dict[str, Any]:
        result = self.report.to_dict()
        result.update(
            {
                "alpha": self.alpha,
                "set_size": self.set_size,
                "target": self.target,
                "meets_target": self.meets_target,
            }
        )
        return result


def colourcor_experiment(
    backend: GroupBackend,
    generating_set: SymmetricSet,
    alpha: float,
    radius: int,
    mad_bound: Optional[Fraction] = None,
) -> ColourcorResult:
    """Colour the ball of ``radius`` in Cay(Γ, S ∖ {e}).

    The target check is informative: good sets exist, not every S is one.

    Raises:
        ParameterError: α ≤ 0
    """
    if alpha <= 0:
        raise ParameterError(f"α must be positive, got {alpha}")
    loop_free = generating_set.without_identity(backend)
    vertices = ball(backend, loop_free.elements, radius)
    graph = cayley_graph(backend, loop_free, vertices)
    report = degeneracy_colouring(graph, mad_bound=mad_bound)
    target = math.floor(loop_free.size ** (1.0 / alpha) + 1e-12)
    logger.debug(
        f"Colouring ball({radius}) with {len(vertices)} vertices: "
        f"{report.colours_used} colours, target {target}"
    )
    return ColourcorResult(
        report=report, alpha=alpha, set_size=loop_free.size, target=target
    )
