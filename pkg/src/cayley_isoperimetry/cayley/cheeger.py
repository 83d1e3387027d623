import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from cayley_isoperimetry.cayley.counting import subset_stats
from cayley_isoperimetry.cayley.search import SearchConfig, densest_subset
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.symmetric_set import (
    SymmetricSet,
    standard_generating_set,
)
from cayley_isoperimetry.model.report import Provenance, Quantity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheegerResult:
    """Upper bound (or exact value) for the Cheeger constant h(Γ, S).

    Attributes:
        h: Smallest |∂F|/|F| found, or the documented exact value
        degree: |S|
        exact: h is the exact Cheeger constant (finite group with F = Γ
            examined, or an analytic value)
        provenance: EXACT, ANALYTIC or UPPER_BOUND
        witness: Set attaining h (empty for analytic values)
        pool_optimal: Exhaustive enumeration covered the whole configured pool,
            so h is optimal among connected subsets of that pool
        candidates_examined: Number of candidate sets evaluated
        trend: Nested-ball family as (|F|, |∂F|/|F|)
    """

    h: Fraction
    degree: int
    exact: bool
    provenance: Provenance
    witness: Tuple[Element, ...] = ()
    pool_optimal: bool = False
    candidates_examined: int = 0
    trend: List[Tuple[int, Fraction]] = field(default_factory=list)

    @property
    def e(self) -> Fraction:
        return 1 - self.h / self.degree

    @property
    def mad(self) -> Fraction:
        return self.degree - self.h

    @classmethod
    def from_analytic(cls, h: Fraction, degree: int) -> "CheegerResult":
        return cls(
            h=Fraction(h), degree=degree, exact=True, provenance=Provenance.ANALYTIC
        )


def cheeger_upper(
    backend: GroupBackend,
    generating_set: SymmetricSet,
    config: Optional[SearchConfig] = None,
    layers: Optional[List[List[Element]]] = None,
) -> CheegerResult:
    """Upper bound for h(Γ, S) = inf |∂F|/|F| by subset search.

    The reported value is the minimum ratio over all candidates examined and
    is attained by the returned witness.

    Args:
        backend: Group
        generating_set: S
        config: Candidate pool and strategies
        layers: Optional precomputed ball layers of S for the pool

    Returns:
        CheegerResult; exact only when the group is finite and F = Γ was examined
    """
    config = config or SearchConfig()
    degree = generating_set.size
    weights = {s: 1 for s in generating_set.elements}
    found = densest_subset(backend, weights, generating_set.elements, config, layers)

    h = degree - Fraction(found.density)
    stats = subset_stats(backend, generating_set, list(found.witness))
    # witness must reproduce the reported ratio exactly
    assert stats.ratio == h, f"witness ratio {stats.ratio} != reported h {h}"

    exact = found.whole_group and backend.is_finite
    if exact:
        assert h == 0
    logger.info(
        f"Cheeger bound for |S|={degree}: h <= {h} ({float(h):.6f}) "
        f"witness |F|={stats.size}, exact={exact}, pool_optimal={found.pool_optimal}"
    )
    return CheegerResult(
        h=h,
        degree=degree,
        exact=exact,
        provenance=Provenance.EXACT if exact else Provenance.UPPER_BOUND,
        witness=found.witness,
        pool_optimal=found.pool_optimal,
        candidates_examined=found.candidates_examined,
        trend=[(size, degree - Fraction(d)) for size, d in found.trend],
    )


def analytic_h(
    backend: GroupBackend, generating_set: SymmetricSet
) -> Optional[Fraction]:
    """Documented exact Cheeger constants.

    0 for finite and amenable backends with any S; 2m − 2 for the free group
    of rank m with its standard generating set (tree isoperimetry). None
    otherwise.
    """
    if backend.is_finite or backend.is_amenable:
        return Fraction(0)
    if backend.kind == "free" and set(generating_set.elements) == set(
        standard_generating_set(backend).elements
    ):
        return Fraction(2 * backend.rank - 2)  # type: ignore[attr-defined]
    return None


def e_and_mad(
    cheeger: CheegerResult, generating_set: SymmetricSet
) -> Tuple[Quantity, Quantity]:
    """e(Γ, S) = 1 − h/|S| and mad = |S|·e.

    When h is only an upper bound both are tagged as lower bounds.
    """
    degree = generating_set.size
    e = 1 - cheeger.h / degree
    mad = degree * e
    if cheeger.provenance == Provenance.UPPER_BOUND:
        provenance = Provenance.LOWER_BOUND
    else:
        provenance = cheeger.provenance
    return Quantity(e, provenance), Quantity(mad, provenance)
