"""Box functions: multiples of characteristic functions extracted from ℓᵖ data."""

import math
from dataclasses import dataclass
from typing import Any, Dict, List

from scipy.special import zeta as _hurwitz_zeta

from cayley_isoperimetry.exceptions import InputError, ParameterError
from cayley_isoperimetry.groups.base import Element
from cayley_isoperimetry.littlewood.norms import lp_norm
from cayley_isoperimetry.spectral.convolution import FiniteSupportFunction

CERTIFICATE_TOLERANCE = 1e-12


def zeta(s: float) -> float:
    """Riemann ζ(s) for s > 1."""
    if s <= 1:
        raise ParameterError(f"ζ(s) diverges for s = {s}")
    return float(_hurwitz_zeta(s, 1))


@dataclass(frozen=True)
class BoxFunction:
    """height · 1_support with 0 ≤ box ≤ f on the support."""

    height: float
    support: List[Element]
    p: float
    q: float
    source_p_norm: float

    @property
    def width(self) -> int:
        return len(self.support)

    @property
    def q_norm(self) -> float:
        return self.height * self.width ** (1.0 / self.q)

    @property
    def guarantee(self) -> float:
        """ζ(p/q)^{−1/p}·‖f‖_p, the promised lower bound for the q-norm."""
        return zeta(self.p / self.q) ** (-1.0 / self.p) * self.source_p_norm

    @property
    def certified(self) -> bool:
        return self.q_norm >= self.guarantee * (1 - CERTIFICATE_TOLERANCE)

    @property
    def ratio(self) -> float:
        return self.q_norm / self.guarantee if self.guarantee else math.inf

    def as_function(self) -> FiniteSupportFunction:
        return FiniteSupportFunction.indicator(self.support, self.height)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "height": self.height,
            "width": self.width,
            "p": self.p,
            "q": self.q,
            "q_norm": self.q_norm,
            "guarantee": self.guarantee,
            "certified": self.certified,
        }


def box_trick(f: FiniteSupportFunction, p: float, q: float) -> BoxFunction:
    """Pick the box under f with the largest q-norm.

    With values sorted decreasingly as f_(1) ≥ f_(2) ≥ ..., the candidate of
    width n has height f_(n), so its q-norm is f_(n)·n^{1/q}. The maximiser
    (smallest n on ties) satisfies ‖f^□‖_q ≥ ζ(p/q)^{−1/p}‖f‖_p.

    Raises:
        ParameterError: not 0 < q < p < ∞, or f takes negative values
        InputError: f is identically zero
    """
    if not (0 < q < p) or math.isinf(p):
        raise ParameterError(f"Box trick needs 0 < q < p < ∞, got p={p}, q={q}")
    if not f.is_nonnegative():
        raise ParameterError("Box trick needs a nonnegative function")
    ranked = sorted(f.items(), key=lambda item: -float(item[1]))
    if not ranked:
        raise InputError("Box trick needs a nonzero function")

    best_n = 1
    best_value = -1.0
    for n, (_, value) in enumerate(ranked, start=1):
        candidate = float(value) * n ** (1.0 / q)
        if candidate > best_value:
            best_value = candidate
            best_n = n
    height = float(ranked[best_n - 1][1])
    return BoxFunction(
        height=height,
        support=[g for g, _ in ranked[:best_n]],
        p=p,
        q=q,
        source_p_norm=float(lp_norm(f, p)),
    )
