import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from cayley_isoperimetry.cogrowth.counts import CogrowthCounts

logger = logging.getLogger(__name__)

RANGE_TOLERANCE = 1e-9


@dataclass
class CogrowthEstimate:
    """Estimates of the cogrowth α from kernel counts.

    Attributes:
        rank: m
        root_estimate: max_k c_k^{1/k}
        ratio_estimates: (k + 2, √(c_{k+2}/c_k)) on parity classes with nonzero counts
        point_estimate: Last ratio estimate, or the root estimate without ratios
        trivial_kernel: Every computed c_k is zero
        upper_in_range: Point estimate ≤ 2m − 1
        lower_in_range: Point estimate ≥ √(2m − 1)
    """

    rank: int
    root_estimate: Optional[float] = None
    ratio_estimates: List[Tuple[int, float]] = field(default_factory=list)
    point_estimate: Optional[float] = None
    trivial_kernel: bool = False
    upper_in_range: bool = True
    lower_in_range: bool = True

    @property
    def alpha_min(self) -> float:
        return math.sqrt(2 * self.rank - 1)

    @property
    def alpha_max(self) -> float:
        return float(2 * self.rank - 1)

    @property
    def clamped_alpha(self) -> Optional[float]:
        """Point estimate clamped into [√(2m−1), 2m−1]."""
        if self.point_estimate is None:
            return None
        return min(max(self.point_estimate, self.alpha_min), self.alpha_max)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rank": self.rank,
            "root_estimate": self.root_estimate,
            "point_estimate": self.point_estimate,
            "clamped_alpha": self.clamped_alpha,
            "trivial_kernel": self.trivial_kernel,
            "upper_in_range": self.upper_in_range,
            "lower_in_range": self.lower_in_range,
            "alpha_range": [self.alpha_min, self.alpha_max],
        }


def cogrowth_estimate(counts: CogrowthCounts) -> CogrowthEstimate:
    """Root and ratio estimators for α = limsup c_k^{1/k}.

    All-zero counts set the trivial-kernel flag and leave the estimates empty.
    """
    estimate = CogrowthEstimate(rank=counts.rank)
    c = counts.counts
    if not any(c):
        estimate.trivial_kernel = True
        logger.info(
            f"Trivial kernel up to k={counts.k_max}; α undefined at this truncation"
        )
        return estimate

    estimate.root_estimate = max(
        math.exp(math.log(value) / k) for k, value in enumerate(c, start=1) if value > 0
    )
    for k in range(1, len(c) - 1):
        low, high = c[k - 1], c[k + 1]
        if low > 0 and high > 0:
            estimate.ratio_estimates.append((k + 2, math.sqrt(high / low)))

    if estimate.ratio_estimates:
        estimate.point_estimate = estimate.ratio_estimates[-1][1]
    else:
        estimate.point_estimate = estimate.root_estimate

    point = estimate.point_estimate
    estimate.upper_in_range = point <= estimate.alpha_max + RANGE_TOLERANCE
    estimate.lower_in_range = point >= estimate.alpha_min - RANGE_TOLERANCE
    logger.debug(
        f"Cogrowth estimate α ≈ {point:.6f} (root {estimate.root_estimate:.6f})"
    )
    return estimate
