import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from cayley_isoperimetry.exponents.terms import ExponentReport
from cayley_isoperimetry.groups.base import GroupBackend

IFF = "iff"
NECESSARY = "necessary condition"
BAND_TOLERANCE = 1e-9


@dataclass(frozen=True)
class GroupFacts:
    """Structural facts known about the group, None when unknown."""

    finite: bool
    amenable: Optional[bool] = None
    free_subgroup: Optional[bool] = None
    rapid_decay: Optional[bool] = None
    rapid_decay_p: Optional[float] = None

    @classmethod
    def from_backend(cls, backend: GroupBackend, **extra: Any) -> "GroupFacts":
        return cls(
            finite=backend.is_finite,
            amenable=backend.is_amenable,
            free_subgroup=backend.contains_free_subgroup,
            **extra,
        )


@dataclass(frozen=True)
class Statement:
    text: str
    tag: str
    applies: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {"text": self.text, "tag": self.tag, "applies": self.applies}


@dataclass
class Classification:
    band: str
    lit: float
    eta: float
    r: float
    statements: List[Statement] = field(default_factory=list)
    chain_note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "band": self.band,
            "lit": "inf" if math.isinf(self.lit) else self.lit,
            "eta": self.eta,
            "r": self.r,
            "statements": [s.to_dict() for s in self.statements],
            "chain_note": self.chain_note,
        }


def _band(eta: float, facts: GroupFacts) -> str:
    if facts.finite:
        return "0"
    if eta <= BAND_TOLERANCE:
        return "1"
    if eta >= 1 - BAND_TOLERANCE:
        return "inf"
    if abs(eta - 0.5) <= BAND_TOLERANCE:
        return "2"
    return "(1,2)" if eta < 0.5 else "(2,inf)"


def classify(report: ExponentReport, facts: GroupFacts) -> Classification:
    """Place the Lit estimate against the thresholds 0, 1, 2 and ∞."""
    eta = report.eta_estimate.as_float()
    r = report.r_estimate.as_float()
    lit = 0.0 if facts.finite else report.lit_estimate.as_float()
    band = _band(eta, facts)

    statements = [
        Statement("Lit(Γ) = 0 if and only if Γ is finite", IFF, facts.finite),
        Statement(
            "Lit(Γ) = 1 if and only if Γ is infinite amenable",
            IFF,
            None if facts.amenable is None else (facts.amenable and not facts.finite),
        ),
        Statement(
            "Lit(Γ) ≤ 2 if Γ is unitarisable"
            + ("; the estimate sits at the threshold" if band == "2" else "")
            + ("; the estimate exceeds it" if band in ("(2,inf)", "inf") else ""),
            NECESSARY,
            None,
        ),
        Statement(
            "Lit(Γ) = ∞ if Γ contains a non-abelian free subgroup"
            + ("; consistent with containing a free subgroup" if band == "inf" else ""),
            NECESSARY,
            facts.free_subgroup,
        ),
    ]
    if facts.rapid_decay and not facts.finite:
        statements.append(
            Statement("With property RD, Lit(Γ) lies outside (1, 2)", NECESSARY, True)
        )
    if facts.rapid_decay_p is not None and not facts.finite:
        p = facts.rapid_decay_p
        statements.append(
            Statement(
                f"With property RD_p for p = {p}, r(Γ) ≥ {1 - 1 / p:.6f}",
                NECESSARY,
                True,
            )
        )

    chain_note = (
        f"For infinite groups 0 ≤ r ≤ η = 1 − 1/Lit ≤ 2r ≤ 1; "
        f"here r-term {r:.6f} and η-term {eta:.6f} "
        f"({report.eta_estimate.provenance.value})"
    )
    return Classification(
        band=band, lit=lit, eta=eta, r=r, statements=statements, chain_note=chain_note
    )
