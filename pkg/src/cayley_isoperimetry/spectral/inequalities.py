import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Sequence

from cayley_isoperimetry.cayley.cheeger import analytic_h
from cayley_isoperimetry.cayley.counting import subset_stats
from cayley_isoperimetry.exceptions import UnsolvableInstanceError
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.symmetric_set import SymmetricSet
from cayley_isoperimetry.model.report import Quantity
from cayley_isoperimetry.spectral.radius import analytic_rho

logger = logging.getLogger(__name__)

TOLERANCE = 1e-10


@dataclass(frozen=True)
class MoharReport:
    """|S|(1 − ρ) ≤ h ≤ |S|√(1 − ρ²) and the equivalent e ≤ ρ, e ≥ ρ²/2."""

    degree: int
    h: float
    rho: float
    lower: float
    upper: float
    lower_slack: float
    upper_slack: float
    e_le_rho: bool
    e_ge_half_rho_sq: bool

    @property
    def passed(self) -> bool:
        return (
            self.lower_slack >= -TOLERANCE
            and self.upper_slack >= -TOLERANCE
            and self.e_le_rho
            and self.e_ge_half_rho_sq
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "h": self.h,
            "rho": self.rho,
            "lower": self.lower,
            "upper": self.upper,
            "lower_slack": self.lower_slack,
            "upper_slack": self.upper_slack,
            "e_le_rho": self.e_le_rho,
            "e_ge_half_rho_sq": self.e_ge_half_rho_sq,
            "passed": self.passed,
        }


def is_fully_solvable(backend: GroupBackend, generating_set: SymmetricSet) -> bool:
    """Both h and ρ are known exactly for this pair."""
    return (
        analytic_h(backend, generating_set) is not None
        and analytic_rho(backend, generating_set) is not None
    )


def mohar_check(degree: int, h: Quantity, rho: Quantity) -> MoharReport:
    """Check the two-sided Mohar inequality on exact values.

    Raises:
        UnsolvableInstanceError: h or ρ is only a bound; mixing bound
            directions would make the check unsound
    """
    if not (h.is_exact and rho.is_exact):
        raise UnsolvableInstanceError(
            f"Mohar check needs exact h and ρ, got {h.provenance.value} h "
            f"and {rho.provenance.value} ρ"
        )
    h_value = h.as_float()
    rho_value = rho.as_float()
    lower = degree * (1 - rho_value)
    upper = degree * math.sqrt(max(0.0, 1 - rho_value**2))
    e = 1 - h_value / degree
    report = MoharReport(
        degree=degree,
        h=h_value,
        rho=rho_value,
        lower=lower,
        upper=upper,
        lower_slack=h_value - lower,
        upper_slack=upper - h_value,
        e_le_rho=e <= rho_value + TOLERANCE,
        e_ge_half_rho_sq=e >= rho_value**2 / 2 - TOLERANCE,
    )
    logger.debug(
        f"Mohar: {lower:.6f} <= {h_value:.6f} <= {upper:.6f}, "
        f"passed={report.passed}"
    )
    return report


@dataclass(frozen=True)
class EdgeDensityReport:
    """|E(F)| − ½|L(F)| ≤ ½|F||S|ρ for one vertex set F."""

    size: int
    lhs: float
    rhs: float

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs + TOLERANCE


def edge_density_check(
    backend: GroupBackend,
    generating_set: SymmetricSet,
    vertices: Sequence[Element],
    rho: Quantity,
) -> EdgeDensityReport:
    """Internal edge density of F against the spectral radius.

    Raises:
        UnsolvableInstanceError: ρ is not exact
    """
    if not rho.is_exact:
        raise UnsolvableInstanceError("Edge density check needs an exact ρ")
    stats = subset_stats(backend, generating_set, vertices)
    lhs = stats.internal_edges - stats.loops / 2
    rhs = stats.size * generating_set.size * rho.as_float() / 2
    return EdgeDensityReport(size=stats.size, lhs=float(lhs), rhs=rhs)
