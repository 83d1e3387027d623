import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from cayley_isoperimetry.exceptions import DomainError, ParameterError
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.symmetric_set import (
    SymmetricSet,
    ball,
    standard_generating_set,
)
from cayley_isoperimetry.littlewood.norms import lp_norm
from cayley_isoperimetry.spectral.convolution import FiniteSupportFunction, Number

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecompositionCertificate:
    """Split f(x⁻¹y) = f₁(x, y) + f₂(x, y) on a truncated domain.

    Attributes:
        truncation: Radius of the standard ball used as the domain
        row_sup: sup_x Σ_y f₁(x, y)
        column_sup: sup_y Σ_x f₂(x, y)
        domain_size: Number of elements in the domain
    """

    truncation: int
    row_sup: Number
    column_sup: Number
    domain_size: int

    @property
    def bound(self) -> Number:
        return self.row_sup + self.column_sup

    def to_dict(self) -> Dict[str, Any]:
        return {
            "truncation": self.truncation,
            "row_sup": float(self.row_sup),
            "column_sup": float(self.column_sup),
            "bound": float(self.bound),
            "domain_size": self.domain_size,
        }


def _induced_lengths(
    backend: GroupBackend, steps: Sequence[Element], domain: List[Element]
) -> Dict[Element, float]:
    """S-distance from the identity inside the graph induced on the domain."""
    members = set(domain)
    lengths: Dict[Element, float] = {backend.identity: 0}
    frontier = [backend.identity]
    distance = 0
    while frontier:
        distance += 1
        next_frontier = []
        for x in frontier:
            for s in steps:
                y = backend.multiply(x, s)
                if y in members and y not in lengths:
                    lengths[y] = distance
                    next_frontier.append(y)
        frontier = next_frontier
    return {g: lengths.get(g, math.inf) for g in domain}


def free_t1_certificate(
    backend: GroupBackend,
    generating_set: SymmetricSet,
    truncation: int,
    f: Optional[FiniteSupportFunction] = None,
) -> DecompositionCertificate:
    """Explicit Littlewood decomposition of f (default 1_S) on a free group.

    f₁ keeps the pairs (x, y) with |y| ≤ |x| in S-word length and f₂ the rest,
    over ball(truncation) × ball(truncation) of the standard generators. When S
    is a basis with inverses every x ≠ e has exactly one shorter neighbour,
    so both sups are 1.

    Raises:
        DomainError: backend is not a free group
        ParameterError: truncation < 0
    """
    if not isinstance(backend, FreeGroup):
        raise DomainError(
            f"T₁ certificate is built on free groups only, got {backend.kind}"
        )
    if truncation < 0:
        raise ParameterError(f"truncation must be nonnegative, got {truncation}")
    if f is None:
        f = FiniteSupportFunction.indicator(generating_set.elements)

    domain = ball(backend, backend.generator_elements(), truncation)
    members = set(domain)
    steps = [g for g in generating_set.elements if g != backend.identity]
    lengths = _induced_lengths(backend, steps, domain)

    row_sums: Dict[Element, Number] = {x: 0 for x in domain}
    column_sums: Dict[Element, Number] = {y: 0 for y in domain}
    for x in domain:
        for g, value in f.items():
            y = backend.multiply(x, g)
            if y not in members:
                continue
            if lengths[y] <= lengths[x]:
                row_sums[x] += abs(value)
            else:
                column_sums[y] += abs(value)

    certificate = DecompositionCertificate(
        truncation=truncation,
        row_sup=max(row_sums.values()),
        column_sup=max(column_sums.values()),
        domain_size=len(domain),
    )
    logger.debug(
        f"T₁ certificate at truncation {truncation}: rows {certificate.row_sup}, "
        f"columns {certificate.column_sup}"
    )
    return certificate


@dataclass(frozen=True)
class T1RatioPoint:
    rank: int
    certificate: float
    lp_norm: float

    @property
    def ratio(self) -> float:
        return self.certificate / self.lp_norm


def t1_ratio_scan(
    ranks: Sequence[int], p: float, truncation: int = 2
) -> List[T1RatioPoint]:
    """‖1_S‖_{T₁} certificates against ‖1_S‖_p = (2m)^{1/p} for free groups.

    The certificate stays at 2 while the ℓᵖ norm grows with the rank, so the
    ratio tends to 0 and T₁ cannot embed boundedly in ℓᵖ.
    """
    points = []
    for rank in ranks:
        group = FreeGroup(rank)
        generating_set = standard_generating_set(group)
        certificate = free_t1_certificate(group, generating_set, truncation)
        norm = lp_norm(FiniteSupportFunction.indicator(generating_set.elements), p)
        points.append(T1RatioPoint(rank, float(certificate.bound), float(norm)))
    return points
