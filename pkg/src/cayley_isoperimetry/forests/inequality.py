import math
from dataclasses import dataclass
from typing import Any, Dict

from cayley_isoperimetry.exceptions import NotTransitiveError, ParameterError
from cayley_isoperimetry.forests.marginals import ForestMarginals
from cayley_isoperimetry.littlewood.norms import lp_norm
from cayley_isoperimetry.model.report import Provenance, Quantity
from cayley_isoperimetry.spectral.convolution import FiniteSupportFunction

EQUALITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ForestInequalityReport:
    """‖f_μ‖_p ≥ deg(μ)·width(μ)^{−(p−1)/p}, with the T₁ half cited."""

    p: float
    norm: float
    bound: float
    degree: float
    width: int

    @property
    def slack(self) -> float:
        return self.norm - self.bound

    @property
    def passed(self) -> bool:
        return self.slack >= -EQUALITY_TOLERANCE * max(1.0, self.bound)

    @property
    def equality(self) -> bool:
        return abs(self.slack) <= EQUALITY_TOLERANCE * max(1.0, self.bound)

    @property
    def t1_bound(self) -> Quantity:
        return Quantity(2, Provenance.CITED)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p if not math.isinf(self.p) else "inf",
            "norm": self.norm,
            "bound": self.bound,
            "slack": self.slack,
            "degree": self.degree,
            "width": self.width,
            "passed": self.passed,
            "equality": self.equality,
            "t1_bound": self.t1_bound.to_dict(),
        }


def forest_inequality_check(
    marginals: ForestMarginals, p: float
) -> ForestInequalityReport:
    """Hölder lower bound for ‖f_μ‖_p on a vertex-transitive Cayley graph.

    Raises:
        NotTransitiveError: f_μ is not defined for the input graph
        ParameterError: p < 1
    """
    if not marginals.transitive:
        raise NotTransitiveError("Forest inequality needs a full Cayley graph")
    if p < 1:
        raise ParameterError(f"p must be at least 1, got {p}")
    width = marginals.width
    degree = marginals.degree
    exponent = 1.0 if math.isinf(p) else (p - 1) / p
    bound = degree * width ** (-exponent) if width else 0.0
    norm = float(lp_norm(FiniteSupportFunction(dict(marginals.f_mu)), p))
    return ForestInequalityReport(
        p=p, norm=norm, bound=bound, degree=degree, width=width
    )
