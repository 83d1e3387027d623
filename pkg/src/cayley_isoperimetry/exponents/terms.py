"""Per-set exponent terms.

For a symmetric set S the η-term is −ln e(Γ,S)/ln|S| and the r-term is
−ln ρ(Γ,S)/ln|S|. The exponents η and r are liminfs of these terms over S;
only the terms and their running infima over set sizes are reported.

A lower bound on e gives an upper bound on the η-term, and likewise for ρ
and the r-term. Inequalities between terms are only checked when both sides
are exact.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from cayley_isoperimetry.cayley.cheeger import (
    CheegerResult,
    analytic_h,
    cheeger_upper,
    e_and_mad,
)
from cayley_isoperimetry.cayley.search import SearchConfig
from cayley_isoperimetry.exceptions import InputError, ParameterError
from cayley_isoperimetry.groups.base import GroupBackend
from cayley_isoperimetry.groups.free import FreeGroup
from cayley_isoperimetry.groups.symmetric_set import (
    SymmetricSet,
    build_symmetric_set,
    standard_generating_set,
)
from cayley_isoperimetry.model.report import Provenance, Quantity
from cayley_isoperimetry.spectral.radius import (
    DEFAULT_MAX_SUPPORT,
    analytic_rho,
    return_probability_bounds,
)

logger = logging.getLogger(__name__)

FAMILY_KINDS = ("balls", "spheres", "powers", "boxes", "ranks", "list")
TOLERANCE = 1e-10

_FLIPPED = {
    Provenance.LOWER_BOUND: Provenance.UPPER_BOUND,
    Provenance.UPPER_BOUND: Provenance.LOWER_BOUND,
}


def lit_from_eta(eta: float) -> float:
    """Lit = 1/(1 − η) on [0, 1], with η = 1 ↦ ∞."""
    if not -TOLERANCE <= eta <= 1 + TOLERANCE:
        raise ParameterError(f"η must lie in [0, 1], got {eta}")
    if eta >= 1:
        return math.inf
    return 1.0 / (1.0 - eta)


def eta_from_lit(lit: float) -> float:
    """η = 1 − 1/Lit for infinite groups (Lit ∈ [1, ∞])."""
    if lit < 1:
        raise ParameterError(f"Lit of an infinite group is at least 1, got {lit}")
    if math.isinf(lit):
        return 1.0
    return 1.0 - 1.0 / lit


@dataclass
class ExponentDepth:
    """How hard each set is worked.

    Attributes:
        search: Subset search for Cheeger upper bounds
        k_max: Return-probability steps for ρ lower bounds
        prefer_analytic: Use documented exact h and ρ when available
        max_support: Largest walk support for the return-probability bounds
    """

    search: SearchConfig = field(default_factory=SearchConfig)
    k_max: int = 8
    prefer_analytic: bool = True
    max_support: int = DEFAULT_MAX_SUPPORT

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> "ExponentDepth":
        data = data or {}
        return cls(
            search=SearchConfig.from_dict(data.get("search")),
            k_max=int(data.get("k_max", 8)),
            prefer_analytic=bool(data.get("prefer_analytic", True)),
            max_support=int(data.get("max_support", DEFAULT_MAX_SUPPORT)),
        )


def _term(value: Quantity, size: int) -> Quantity:
    """−ln(value)/ln|S| with the bound direction flipped."""
    provenance = _FLIPPED.get(value.provenance, value.provenance)
    x = value.as_float()
    if x <= 0:
        return Quantity(math.inf, provenance)
    return Quantity(max(0.0, -math.log(x)) / math.log(size), provenance)


@dataclass
class ExponentRecord:
    label: str
    size: int
    e: Quantity
    rho: Quantity
    eta_term: Quantity
    r_term: Quantity

    @property
    def exact(self) -> bool:
        return self.eta_term.is_exact and self.r_term.is_exact

    @property
    def slack_ceiling(self) -> float:
        return 1 + math.log(2) / math.log(self.size)

    @property
    def sandwich_holds(self) -> Optional[bool]:
        """r ≤ η ≤ 2r + ln2/ln|S| on exact instances."""
        if not self.exact:
            return None
        r = self.r_term.as_float()
        eta = self.eta_term.as_float()
        upper = 2 * r + math.log(2) / math.log(self.size)
        return r <= eta + TOLERANCE and eta <= upper + TOLERANCE

    @property
    def kesten_holds(self) -> Optional[bool]:
        """r-term ≤ (ln|S| − ½ln(|S|−1))/ln|S| for exact ρ."""
        if not self.rho.is_exact:
            return None
        log_size = math.log(self.size)
        ceiling = (log_size - 0.5 * math.log(self.size - 1)) / log_size
        return self.r_term.as_float() <= ceiling + TOLERANCE

    @property
    def in_range(self) -> bool:
        ceiling = self.slack_ceiling + TOLERANCE
        return all(
            -TOLERANCE <= term.as_float() <= ceiling
            for term in (self.eta_term, self.r_term)
            if term.is_exact
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "size": self.size,
            "e": self.e.to_dict(),
            "rho": self.rho.to_dict(),
            "eta_term": self.eta_term.to_dict(),
            "r_term": self.r_term.to_dict(),
            "sandwich_holds": self.sandwich_holds,
            "kesten_holds": self.kesten_holds,
            "in_range": self.in_range,
        }


@dataclass
class ExponentReport:
    """Per-set terms and their running infima over increasing |S|."""

    records: List[ExponentRecord]

    @property
    def running_infimum(self) -> List[Tuple[int, float, float]]:
        curve = []
        eta_inf = math.inf
        r_inf = math.inf
        for record in sorted(self.records, key=lambda r: r.size):
            eta_inf = min(eta_inf, record.eta_term.as_float())
            r_inf = min(r_inf, record.r_term.as_float())
            curve.append((record.size, eta_inf, r_inf))
        return curve

    @property
    def eta_estimate(self) -> Quantity:
        """Smallest η-term; an upper bound on it when any term is only a bound."""
        best = min(self.records, key=lambda r: r.eta_term.as_float())
        provenance = (
            Provenance.ESTIMATE if best.eta_term.is_exact else best.eta_term.provenance
        )
        return Quantity(best.eta_term.as_float(), provenance)

    @property
    def r_estimate(self) -> Quantity:
        best = min(self.records, key=lambda r: r.r_term.as_float())
        provenance = (
            Provenance.ESTIMATE if best.r_term.is_exact else best.r_term.provenance
        )
        return Quantity(best.r_term.as_float(), provenance)

    @property
    def lit_estimate(self) -> Quantity:
        eta = self.eta_estimate
        return Quantity(lit_from_eta(min(eta.as_float(), 1.0)), eta.provenance)

    def summary(self) -> Dict[str, Any]:
        etas = [r.eta_term.as_float() for r in self.records]
        rs = [r.r_term.as_float() for r in self.records]
        return {
            "eta_min": min(etas),
            "eta_max": max(etas),
            "r_min": min(rs),
            "r_max": max(rs),
            "sizes": sorted({r.size for r in self.records}),
        }

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "size": r.size,
                "eta_term": r.eta_term.as_float(),
                "r_term": r.r_term.as_float(),
                "label": r.label,
            }
            for r in sorted(self.records, key=lambda r: (r.size, r.label))
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "records": [r.to_dict() for r in self.records],
            "summary": self.summary(),
            "running_infimum": [
                {"size": s, "eta_term": eta, "r_term": r}
                for s, eta, r in self.running_infimum
            ],
            "eta_estimate": self.eta_estimate.to_dict(),
            "r_estimate": self.r_estimate.to_dict(),
            "lit_estimate": self.lit_estimate.to_dict(),
        }


def family_sets(
    backend: GroupBackend, family: Dict[str, Any]
) -> List[Tuple[GroupBackend, SymmetricSet]]:
    """Expand a set family descriptor into (group, set) pairs.

    ``ranks`` builds free groups of the listed ranks and ignores ``backend``.

    Raises:
        InputError: unknown family kind or missing values
    """
    kind = family.get("kind")
    values = family.get("values", [])
    if kind == "list":
        sets = family.get("sets")
        if not isinstance(sets, list):
            raise InputError("Set family of kind 'list' needs a 'sets' list")
        return [(backend, build_symmetric_set(backend, d)) for d in sets]
    if kind not in FAMILY_KINDS:
        raise InputError(
            f"Unknown set family '{kind}' "
            f"(expected one of {', '.join(FAMILY_KINDS)})"
        )
    if not isinstance(values, list) or not values:
        raise InputError(f"Set family '{kind}' needs a non-empty 'values' list")
    if kind == "ranks":
        pairs = []
        for rank in values:
            group = FreeGroup(int(rank))
            pairs.append((group, standard_generating_set(group)))
        return pairs
    field_name = {
        "balls": "radius",
        "spheres": "radius",
        "powers": "k",
        "boxes": "k",
    }[kind]
    set_kind = {
        "balls": "ball",
        "spheres": "sphere",
        "powers": "power",
        "boxes": "box",
    }[kind]
    return [
        (backend, build_symmetric_set(backend, {"kind": set_kind, field_name: int(v)}))
        for v in values
    ]


def set_record(
    backend: GroupBackend, generating_set: SymmetricSet, depth: ExponentDepth
) -> ExponentRecord:
    """e and ρ for one set, then its two terms."""
    size = generating_set.size
    h_known = analytic_h(backend, generating_set) if depth.prefer_analytic else None
    if h_known is not None:
        cheeger = CheegerResult.from_analytic(h_known, size)
    else:
        cheeger = cheeger_upper(backend, generating_set, depth.search)
    e, _ = e_and_mad(cheeger, generating_set)

    rho_known = analytic_rho(backend, generating_set) if depth.prefer_analytic else None
    if rho_known is not None:
        rho = Quantity(rho_known, Provenance.ANALYTIC)
    else:
        estimate = return_probability_bounds(
            backend, generating_set, depth.k_max, max_support=depth.max_support
        )
        estimate.analytic = None
        rho = estimate.rho()

    return ExponentRecord(
        label=generating_set.label,
        size=size,
        e=e,
        rho=rho,
        eta_term=_term(e, size),
        r_term=_term(rho, size),
    )


def check_family(pairs: List[Tuple[GroupBackend, SymmetricSet]]) -> None:
    """Raises InputError unless the family has two distinct sizes and every |S| ≥ 2."""
    if len(pairs) < 2 or len({s.size for _, s in pairs}) < 2:
        raise InputError(
            "Exponent family must yield at least two sets of distinct sizes"
        )
    small = [s.label for _, s in pairs if s.size < 2]
    if small:
        raise InputError(f"Exponent terms need |S| ≥ 2; offending sets: {small}")


def exponent_terms(
    backend: GroupBackend,
    family: Dict[str, Any],
    depth: Optional[ExponentDepth] = None,
) -> ExponentReport:
    """Per-set η- and r-terms over a family of symmetric sets.

    Raises:
        InputError: fewer than two sets, fewer than two distinct sizes, or a
            set with |S| < 2 (terms need ln|S| > 0)
    """
    depth = depth or ExponentDepth()
    pairs = family_sets(backend, family)
    check_family(pairs)

    records = []
    for group, generating_set in pairs:
        record = set_record(group, generating_set, depth)
        logger.debug(
            f"{record.label}: |S|={record.size}, "
            f"η-term {record.eta_term.as_float():.6f} "
            f"({record.eta_term.provenance.value}), "
            f"r-term {record.r_term.as_float():.6f} "
            f"({record.r_term.provenance.value})"
        )
        records.append(record)
    return ExponentReport(records=records)
