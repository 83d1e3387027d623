import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

from cayley_isoperimetry.exceptions import DomainError, HypothesisError, ParameterError

RANGE_TOLERANCE = 1e-12
BURNSIDE_MIN_EXPONENT = 665
DEFAULT_DELTA = 2 / 3


@dataclass(frozen=True)
class GrigorchukBound:
    """ρ from the cogrowth α of a free-group quotient, plus the weaker α/m bound."""

    alpha: float
    rank: int
    rho: float
    weak_bound: float
    at_lower_boundary: bool
    at_upper_boundary: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "rank": self.rank,
            "rho": self.rho,
            "weak_bound": self.weak_bound,
            "at_lower_boundary": self.at_lower_boundary,
            "at_upper_boundary": self.at_upper_boundary,
        }


def grigorchuk_rho(alpha: float, m: int) -> GrigorchukBound:
    """ρ = ((2m−1)/α + α)/(2m) for √(2m−1) ≤ α ≤ 2m−1.

    The weak bound is min(α/m, 1).

    Raises:
        ParameterError: m < 2
        DomainError: α outside the closed cogrowth range
    """
    if m < 2:
        raise ParameterError(f"Cogrowth formula needs m ≥ 2, got {m}")
    low = math.sqrt(2 * m - 1)
    high = float(2 * m - 1)
    if not (low - RANGE_TOLERANCE <= alpha <= high + RANGE_TOLERANCE):
        raise DomainError(f"α = {alpha} outside [{low}, {high}] for m = {m}")
    rho = ((2 * m - 1) / alpha + alpha) / (2 * m)
    return GrigorchukBound(
        alpha=alpha,
        rank=m,
        rho=rho,
        weak_bound=min(alpha / m, 1.0),
        at_lower_boundary=abs(alpha - low) <= RANGE_TOLERANCE,
        at_upper_boundary=abs(alpha - high) <= RANGE_TOLERANCE,
    )


@dataclass(frozen=True)
class BurnsideBounds:
    """Bounds for free Burnside groups B(m, a) with a ≥ 665 odd.

    Attributes:
        alpha_upper: (2m−1)^δ
        rho_upper: min(α_ub/m, 1)
        rho_grigorchuk: ρ at α_ub from the cogrowth formula
        r_lower: 1/3
        lit_lower: 3/2
        burn_value: (2m−1)^{−1/3}
        burn_reached: α_ub/m ≤ (2m−1)^{−1/3}, i.e. m is large enough for δ
        r_term_lower: −ln ρ / ln 2m for the better of the two ρ upper bounds
    """

    m: int
    a: int
    delta: float
    alpha_upper: float
    rho_upper: float
    rho_grigorchuk: float
    r_lower: Fraction
    lit_lower: Fraction
    burn_value: float
    burn_reached: bool
    r_term_lower: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "a": self.a,
            "delta": self.delta,
            "alpha_upper": self.alpha_upper,
            "rho_upper": self.rho_upper,
            "rho_grigorchuk": self.rho_grigorchuk,
            "r_lower": {
                "value": float(self.r_lower),
                "exact": "1/3",
                "provenance": "cited",
            },
            "lit_lower": {
                "value": float(self.lit_lower),
                "exact": "3/2",
                "provenance": "cited",
            },
            "burn_value": self.burn_value,
            "burn_reached": self.burn_reached,
            "r_term_lower": self.r_term_lower,
        }


def burnside_bounds(m: int, a: int, delta: Optional[float] = None) -> BurnsideBounds:
    """Formula evaluator for the Burnside-group bounds; no group is simulated.

    Raises:
        HypothesisError: m < 2, a even, or a < 665
        ParameterError: δ outside [1/2, 1]
    """
    if m < 2:
        raise HypothesisError(f"Burnside bounds need m ≥ 2, got {m}")
    if a < BURNSIDE_MIN_EXPONENT or a % 2 == 0:
        raise HypothesisError(f"Burnside bounds need an odd exponent a ≥ 665, got {a}")
    delta = DEFAULT_DELTA if delta is None else float(delta)
    if not 0.5 <= delta <= 1.0:
        raise ParameterError(f"δ must lie in [1/2, 1], got {delta}")

    alpha_upper = (2 * m - 1) ** delta
    rho_upper = min(alpha_upper / m, 1.0)
    rho_grigorchuk = grigorchuk_rho(alpha_upper, m).rho
    best_rho = min(rho_upper, rho_grigorchuk)
    burn_value = (2 * m - 1) ** (-1.0 / 3.0)
    return BurnsideBounds(
        m=m,
        a=a,
        delta=delta,
        alpha_upper=alpha_upper,
        rho_upper=rho_upper,
        rho_grigorchuk=rho_grigorchuk,
        r_lower=Fraction(1, 3),
        lit_lower=Fraction(3, 2),
        burn_value=burn_value,
        burn_reached=alpha_upper / m <= burn_value,
        r_term_lower=max(0.0, -math.log(best_rho) / math.log(2 * m)),
    )
