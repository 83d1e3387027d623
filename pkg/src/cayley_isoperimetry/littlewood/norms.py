import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from cayley_isoperimetry.cayley.search import SearchConfig, densest_subset, density_of
from cayley_isoperimetry.exceptions import InputError, ParameterError
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.model.report import Provenance, Quantity
from cayley_isoperimetry.spectral.convolution import FiniteSupportFunction, Number

logger = logging.getLogger(__name__)

Exponent = Union[int, float]


def lp_norm(f: FiniteSupportFunction, p: Exponent) -> Number:
    """ℓᵖ norm for p ≥ 1 or p = ∞.

    p = 1 and p = ∞ keep exact rationals; other exponents return floats.

    Raises:
        ParameterError: p < 1
    """
    if p < 1:
        raise ParameterError(f"ℓᵖ norms need p ≥ 1, got {p}")
    magnitudes = [abs(v) for _, v in f.items()]
    if not magnitudes:
        return 0
    if math.isinf(p):
        return max(magnitudes)
    if p == 1:
        return sum(magnitudes, 0)
    return sum(float(v) ** p for v in magnitudes) ** (1.0 / p)


@dataclass(frozen=True)
class LittlewoodEstimate:
    """Lower bound for N′(f) = sup_F (1/|F|) Σ_{a,b∈F} |f(a⁻¹b)|.

    Attributes:
        value: Best density found, attained by ``witness``
        witness: Vertex set F
        exact: F = Γ was examined on a finite group, so the value is N′(f)
        pool_optimal: Every connected subset of the pool was examined
        candidates_examined: Number of sets evaluated
        cross_check: Optional e(Γ,S)·|S| for f = 1_S
    """

    value: Number
    witness: Tuple[Element, ...]
    exact: bool
    pool_optimal: bool
    candidates_examined: int
    cross_check: Optional[Quantity] = None

    @property
    def provenance(self) -> Provenance:
        return Provenance.EXACT if self.exact else Provenance.LOWER_BOUND

    def quantity(self) -> Quantity:
        return Quantity(self.value, self.provenance)

    def with_cross_check(self, value: Quantity) -> "LittlewoodEstimate":
        return LittlewoodEstimate(
            self.value,
            self.witness,
            self.exact,
            self.pool_optimal,
            self.candidates_examined,
            value,
        )


def pair_density(
    backend: GroupBackend, f: FiniteSupportFunction, vertices: List[Element]
) -> Number:
    """(1/|F|) Σ_{a,b∈F} |f(a⁻¹b)| evaluated directly."""
    if not vertices:
        raise InputError("Vertex set F is empty")
    total: Number = 0
    for a in vertices:
        a_inv = backend.inverse(a)
        for b in vertices:
            total += abs(f[backend.multiply(a_inv, b)])
    return density_of(total, len(vertices))


def nprime_lower(
    backend: GroupBackend,
    f: FiniteSupportFunction,
    config: Optional[SearchConfig] = None,
    layers: Optional[List[List[Element]]] = None,
) -> LittlewoodEstimate:
    """Lower bound for N′(f) by the densest subset search.

    Only |f| matters. Candidate sets are connected in the Cayley graph of the
    symmetrised support of f.

    Raises:
        InputError: f is identically zero
    """
    config = config or SearchConfig()
    weights = {g: abs(v) for g, v in f.items()}
    if not weights:
        raise InputError("N′ of the zero function is not searched")
    connectivity: List[Element] = []
    for g in weights:
        for h in (g, backend.inverse(g)):
            if h != backend.identity and h not in connectivity:
                connectivity.append(h)

    found = densest_subset(backend, weights, connectivity, config, layers)
    value = found.density
    if isinstance(value, int):
        value = Fraction(value)
    exact = found.whole_group and backend.is_finite
    logger.info(
        f"N′ lower bound {value} ({float(value):.6f}) "
        f"on |F|={len(found.witness)}, exact={exact}"
    )
    return LittlewoodEstimate(
        value=value,
        witness=found.witness,
        exact=exact,
        pool_optimal=found.pool_optimal,
        candidates_examined=found.candidates_examined,
    )
