import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from cayley_isoperimetry.exceptions import ParameterError
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.symmetric_set import (
    SymmetricSet,
    ball,
    ball_layers,
    standard_generating_set,
)
from cayley_isoperimetry.model.report import Provenance, Quantity
from cayley_isoperimetry.spectral.convolution import FiniteSupportFunction

logger = logging.getLogger(__name__)

EXACT_MODE_MAX_STEPS = 24
DEFAULT_MAX_SUPPORT = 1_000_000
MONOTONE_TOLERANCE = 1e-12
POWER_ITERATION_TOLERANCE = 1e-10
POWER_ITERATION_MAX_ITER = 10_000


@dataclass(frozen=True)
class ReturnProbability:
    """p_{2k}(e) for the simple random walk and the bound p_{2k}^{1/2k} ≤ ρ."""

    two_k: int
    probability: Union[Fraction, float]
    bound: float
    mode: str


@dataclass
class SpectralEstimate:
    """Lower bounds and optional analytic value for ρ(Γ, S).

    Attributes:
        degree: |S|
        lower_bounds: Return-probability bounds, one per computed step count
        compression_norms: (radius, ‖1_S‖ compressed to the ball) pairs
        analytic: Exact ρ when documented
        conservation_ok: Σ_x μ^{*k}(x) = 1 held for every exact power
        monotone_ok: even-step roots were nondecreasing
        truncated_at: 2k of the first step skipped because its support would
            exceed max_support, None when every requested step ran
        max_support: Support size the walk was allowed to reach
    """

    degree: int
    lower_bounds: List[ReturnProbability] = field(default_factory=list)
    compression_norms: List[Tuple[int, float]] = field(default_factory=list)
    analytic: Optional[float] = None
    conservation_ok: bool = True
    monotone_ok: bool = True
    truncated_at: Optional[int] = None
    max_support: Optional[int] = None

    @property
    def best_lower_bound(self) -> float:
        candidates = [b.bound for b in self.lower_bounds]
        candidates += [norm / self.degree for _, norm in self.compression_norms]
        return max(candidates, default=0.0)

    def rho(self) -> Quantity:
        if self.analytic is not None:
            return Quantity(self.analytic, Provenance.ANALYTIC)
        return Quantity(self.best_lower_bound, Provenance.LOWER_BOUND)

    def compression_monotone(self, tolerance: float = 1e-9) -> bool:
        norms = [norm for _, norm in sorted(self.compression_norms)]
        return all(b >= a * (1 - tolerance) for a, b in zip(norms, norms[1:]))


def kesten_bound(degree: int) -> float:
    """ρ(Γ, S) ≥ √(|S| − 1)/|S| for every symmetric S."""
    return math.sqrt(degree - 1) / degree


def return_probability_bounds(
    backend: GroupBackend,
    generating_set: SymmetricSet,
    k_max: int,
    exact_limit: int = EXACT_MODE_MAX_STEPS,
    max_support: Optional[int] = DEFAULT_MAX_SUPPORT,
) -> SpectralEstimate:
    """Lower bounds p_{2k}(e)^{1/2k} ≤ ρ(Γ, S) for k = 1..k_max.

    Uses p_{2k}(e) = Σ_x μ^{*k}(x)², valid because μ = (1/|S|)1_S is
    symmetric. Walk counts are exact integers while 2k ≤ exact_limit and
    floating point probabilities beyond.

    The support of μ^{*k} can grow like (|S|−1)^k. A step whose support could
    exceed ``max_support`` is not taken: the bounds stop at the previous step
    and ``truncated_at`` records where.

    Raises:
        ParameterError: k_max < 1 or max_support < 1
    """
    if k_max < 1:
        raise ParameterError(f"k_max must be at least 1, got {k_max}")
    if max_support is not None and max_support < 1:
        raise ParameterError(f"max_support must be at least 1, got {max_support}")
    degree = generating_set.size
    steps = list(generating_set.elements)
    estimate = SpectralEstimate(degree=degree, max_support=max_support)

    counts: Dict[Element, int] = {backend.identity: 1}
    probabilities: Optional[Dict[Element, float]] = None
    previous_bound = 0.0

    for k in range(1, k_max + 1):
        support = len(counts) if probabilities is None else len(probabilities)
        if max_support is not None and support * degree > max_support:
            estimate.truncated_at = 2 * k
            logger.warning(
                f"Stopping return probabilities before 2k={2 * k}: support {support} "
                f"times |S|={degree} exceeds max_support={max_support}"
            )
            break
        if 2 * k <= exact_limit:
            next_counts: Dict[Element, int] = {}
            for x, c in counts.items():
                for s in steps:
                    y = backend.multiply(x, s)
                    next_counts[y] = next_counts.get(y, 0) + c
            counts = next_counts
            total = degree**k
            if sum(counts.values()) != total:
                estimate.conservation_ok = False
                logger.error(f"Probability conservation failed at k={k}")
            p_return: Union[Fraction, float] = Fraction(
                sum(c * c for c in counts.values()), total * total
            )
            mode = "exact"
        else:
            if probabilities is None:
                scale = float(degree) ** (k - 1)
                probabilities = {x: c / scale for x, c in counts.items()}
            next_probabilities: Dict[Element, float] = {}
            for x, p in probabilities.items():
                share = p / degree
                for s in steps:
                    y = backend.multiply(x, s)
                    next_probabilities[y] = next_probabilities.get(y, 0.0) + share
            probabilities = next_probabilities
            p_return = sum(p * p for p in probabilities.values())
            mode = "float"

        bound = float(p_return) ** (1.0 / (2 * k))
        if bound < previous_bound * (1 - MONOTONE_TOLERANCE):
            estimate.monotone_ok = False
            logger.warning(f"Return-probability root decreased at 2k={2 * k}")
        previous_bound = max(previous_bound, bound)
        estimate.lower_bounds.append(ReturnProbability(2 * k, p_return, bound, mode))

    estimate.analytic = analytic_rho(backend, generating_set)
    return estimate


@dataclass
class ConservationReport:
    """Step-by-step audit of the exact walk distributions μ^{*n}.

    Attributes:
        steps_requested: Number of steps asked for
        steps_reached: Last n for which μ^{*n} was built
        sums_ok: Σ_x μ^{*2k}(x) = 1 as a Fraction at every even step reached
        closure_ok: Every product x·s was a canonical element of the group,
            and multiplying back by s⁻¹ returned x
        truncated_at: First step skipped because of max_support
    """

    steps_requested: int
    steps_reached: int = 0
    sums_ok: bool = True
    closure_ok: bool = True
    truncated_at: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.sums_ok and self.closure_ok

    @property
    def complete(self) -> bool:
        return self.steps_reached == self.steps_requested


def walk_conservation(
    backend: GroupBackend,
    generating_set: SymmetricSet,
    steps: int = EXACT_MODE_MAX_STEPS,
    max_support: Optional[int] = DEFAULT_MAX_SUPPORT,
) -> ConservationReport:
    """Push μ = (1/|S|)1_S forward ``steps`` times in exact rational arithmetic.

    Unlike the integer walk counts of ``return_probability_bounds``, the mass
    is carried as Fractions, so a product landing on a non-canonical form
    splits the distribution and is caught by the encoding check.

    Raises:
        ParameterError: steps < 1
    """
    if steps < 1:
        raise ParameterError(f"steps must be at least 1, got {steps}")
    degree = generating_set.size
    share = Fraction(1, degree)
    moves = [(s, backend.inverse(s)) for s in generating_set.elements]
    known = set(backend.elements()) if backend.is_finite else None
    report = ConservationReport(steps_requested=steps)

    distribution: Dict[Element, Fraction] = {backend.identity: Fraction(1)}
    for n in range(1, steps + 1):
        if max_support is not None and len(distribution) * degree > max_support:
            report.truncated_at = n
            break
        next_distribution: Dict[Element, Fraction] = {}
        for x, mass in distribution.items():
            part = mass * share
            for s, s_inverse in moves:
                y = backend.multiply(x, s)
                unknown = known is not None and y not in known
                if backend.multiply(y, s_inverse) != x or unknown:
                    report.closure_ok = False
                next_distribution[y] = next_distribution.get(y, Fraction(0)) + part
        distribution = next_distribution
        report.steps_reached = n

        # canonical forms: distinct elements never share an encoding
        if len({backend.encode(y) for y in distribution}) != len(distribution):
            report.closure_ok = False
        if n % 2 == 0 and sum(distribution.values(), Fraction(0)) != 1:
            report.sums_ok = False
            logger.error(f"Σ μ^(*{n}) ≠ 1 on {backend.kind}")

    if not report.closure_ok:
        logger.error(f"Walk on {backend.kind} left the canonical elements")
    return report


def analytic_rho(
    backend: GroupBackend, generating_set: SymmetricSet
) -> Optional[float]:
    """Documented exact spectral radii.

    1 for finite and amenable backends (any S), √(2m−1)/m for the free group
    of rank m with its standard generating set, None otherwise.
    """
    if backend.is_finite or backend.is_amenable:
        return 1.0
    if backend.kind == "free" and set(generating_set.elements) == set(
        standard_generating_set(backend).elements
    ):
        m = backend.rank  # type: ignore[attr-defined]
        return math.sqrt(2 * m - 1) / m
    return None


def operator_norm_lb(
    backend: GroupBackend,
    f: FiniteSupportFunction,
    radius: int,
    generators: Optional[Sequence[Element]] = None,
    tolerance: float = POWER_ITERATION_TOLERANCE,
    max_iter: int = POWER_ITERATION_MAX_ITER,
) -> float:
    """Lower bound for ‖λ(f)‖_{2→2} from the compression to a ball.

    The convolution operator ξ ↦ f * ξ has matrix A[x, z] = f(xz⁻¹).
    Its compression to ball(radius) (with respect to ``generators``, by
    default the standard set) has largest singular value ≤ ‖λ(f)‖. That
    singular value is estimated by power iteration on AᵀA from the all-ones
    vector; the Rayleigh quotient never overshoots.

    Raises:
        ParameterError: f takes a negative value
    """
    if not f.is_nonnegative():
        raise ParameterError("operator_norm_lb needs a nonnegative function")
    if generators is None:
        generators = backend.generator_elements()
    coordinates = ball(backend, generators, radius)
    index = {x: i for i, x in enumerate(coordinates)}
    n = len(coordinates)

    rows: List[int] = []
    cols: List[int] = []
    data: List[float] = []
    for j, z in enumerate(coordinates):
        for g, value in f.items():
            i = index.get(backend.multiply(g, z))
            if i is not None:
                rows.append(i)
                cols.append(j)
                data.append(float(value))
    matrix = sp.csr_matrix((data, (rows, cols)), shape=(n, n))
    gram = (matrix.T @ matrix).tocsr()

    vector = np.ones(n) / math.sqrt(n)
    estimate = 0.0
    for iteration in range(max_iter):
        image = gram @ vector
        rayleigh = float(vector @ image)
        image_norm = float(np.linalg.norm(image))
        if image_norm == 0.0:
            return 0.0
        vector = image / image_norm
        if iteration > 0 and abs(rayleigh - estimate) <= tolerance * rayleigh:
            estimate = rayleigh
            break
        estimate = rayleigh
    else:
        logger.warning(f"Power iteration hit the {max_iter} iteration cap")

    logger.debug(
        f"Compression norm on ball({radius}) of size {n}: "
        f"{math.sqrt(estimate):.10f}"
    )
    return math.sqrt(max(estimate, 0.0))


@dataclass(frozen=True)
class RDScanPoint:
    """Largest observed ‖a‖_{2→2}/‖a‖₂ over functions supported in ball(d).

    ``ratio`` is a lower bound for the supremum over such a, because each
    operator norm is itself a compression lower bound.
    """

    d: int
    ratio: float
    indicator_ratio: float
    support_size: int
    truncation: int
    within_sanity_bound: bool


@dataclass(frozen=True)
class RDGrowthFit:
    """Least-squares slopes of log ratio against log(d+1) and against d."""

    polynomial_degree: float
    exponential_rate: float


def rd_ratio_scan(
    backend: GroupBackend,
    generating_set: SymmetricSet,
    d_max: int,
    trials: int = 8,
    seed: int = 0,
) -> List[RDScanPoint]:
    """Empirical rapid-decay scan.

    For each d ≤ d_max evaluates ‖a‖_{2→2}/‖a‖₂ for a = 1_{ball(d)} and for
    ``trials`` seeded random nonnegative a on ball(d). Norms are compressed to
    the saturated group for finite backends and to ball(2d + 2) otherwise.

    Raises:
        ParameterError: d_max < 1 or trials < 0
    """
    if d_max < 1:
        raise ParameterError(f"d_max must be at least 1, got {d_max}")
    if trials < 0:
        raise ParameterError(f"trials must be nonnegative, got {trials}")
    steps = list(generating_set.elements)
    saturation: Optional[int] = None
    if backend.is_finite:
        saturation = len(ball_layers(backend, steps, backend.order() or 0)) - 1

    points: List[RDScanPoint] = []
    for d in range(1, d_max + 1):
        support = ball(backend, steps, d)
        truncation = saturation if saturation is not None else 2 * d + 2
        rng = np.random.default_rng([seed, d])

        candidates = [FiniteSupportFunction.indicator(support)]
        for _ in range(trials):
            values = rng.random(len(support))
            candidates.append(
                FiniteSupportFunction(dict(zip(support, values.tolist())))
            )

        ratios = []
        for a in candidates:
            l2 = math.sqrt(sum(float(v) ** 2 for _, v in a.items()))
            norm = operator_norm_lb(backend, a, truncation, generators=steps)
            ratios.append(norm / l2)

        best = max(ratios)
        sane = best <= math.sqrt(len(support)) * (1 + 1e-9)
        if not sane:
            logger.error(f"RD ratio {best} exceeds √|support| at d={d}")
        points.append(RDScanPoint(d, best, ratios[0], len(support), truncation, sane))
        logger.debug(f"RD scan d={d}: |ball|={len(support)}, ratio={best:.6f}")
    return points


def rd_growth_fit(points: Sequence[RDScanPoint]) -> RDGrowthFit:
    """Fit ratio ~ (d+1)^k and ratio ~ exp(c·d) by least squares on logs.

    Raises:
        ParameterError: fewer than two scan points
    """
    if len(points) < 2:
        raise ParameterError("rd_growth_fit needs at least two scan points")
    d = np.array([p.d for p in points], dtype=float)
    log_ratio = np.log(np.array([p.ratio for p in points], dtype=float))
    degree = float(np.polyfit(np.log(d + 1), log_ratio, 1)[0])
    rate = float(np.polyfit(d, log_ratio, 1)[0])
    return RDGrowthFit(polynomial_degree=degree, exponential_rate=rate)
