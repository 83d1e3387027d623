from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from cayley_isoperimetry.exceptions import EmptySetError, InputError
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.symmetric_set import SymmetricSet


@dataclass(frozen=True)
class SubsetStats:
    """Edge counts of a finite vertex set F in Cay(Γ, S).

    Attributes:
        size: |F|
        boundary: number of edges leaving F
        internal_edges: edges with both ends in F, loops included
        loops: loops at vertices of F (|F| when the identity is in S)
    """

    size: int
    boundary: int
    internal_edges: int
    loops: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.boundary, self.size)

    def counting_identity_holds(self, degree: int) -> bool:
        """|F||S| = |∂F| + 2|E(F)| − |L(F)|."""
        edge_ends = self.boundary + 2 * self.internal_edges - self.loops
        return self.size * degree == edge_ends


def subset_stats(
    backend: GroupBackend, generating_set: SymmetricSet, vertices: Sequence[Element]
) -> SubsetStats:
    """Count boundary, internal and loop edges of a vertex set.

    Every vertex x has one half-edge (x, s) per s ∈ S. Half-edges leaving F
    are boundary edges, the identity gives a loop, and the remaining
    half-edges pair up into internal edges.

    Raises:
        EmptySetError: F is empty
        InputError: F has duplicate vertices
    """
    if not vertices:
        raise EmptySetError("Vertex set F is empty")
    members = set(vertices)
    if len(members) != len(vertices):
        raise InputError("Vertex set F contains duplicate vertices")

    boundary = 0
    half_edges = 0
    for x in vertices:
        for s in generating_set.elements:
            if s == backend.identity:
                continue
            if backend.multiply(x, s) in members:
                half_edges += 1
            else:
                boundary += 1

    # (x, s) and (xs, s⁻¹) are the two ends of one edge
    assert half_edges % 2 == 0
    loops = len(vertices) if generating_set.contains_identity else 0
    return SubsetStats(
        size=len(vertices),
        boundary=boundary,
        internal_edges=half_edges // 2 + loops,
        loops=loops,
    )
