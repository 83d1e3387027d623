import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from cayley_isoperimetry import __version__

Value = Union[int, float, Fraction, None]


class Provenance(Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper_bound"
    LOWER_BOUND = "lower_bound"
    ANALYTIC = "analytic"
    CITED = "cited"
    ESTIMATE = "estimate"

    @property
    def is_exact(self) -> bool:
        return self in (Provenance.EXACT, Provenance.ANALYTIC, Provenance.CITED)


def jsonable_number(value: Value) -> Any:
    """Floats with inf/nan become strings; Fractions become floats."""
    if value is None:
        return None
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    as_float = float(value)
    if math.isinf(as_float) or math.isnan(as_float):
        return str(as_float)
    return as_float


@dataclass(frozen=True)
class Quantity:
    """A number together with where it comes from."""

    value: Value
    provenance: Provenance

    @property
    def is_exact(self) -> bool:
        return self.provenance.is_exact

    def as_float(self) -> float:
        return float("nan") if self.value is None else float(self.value)

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "value": jsonable_number(self.value),
            "provenance": self.provenance.value,
        }
        if isinstance(self.value, Fraction):
            result["exact"] = f"{self.value.numerator}/{self.value.denominator}"
        return result


@dataclass
class AssertionRecord:
    """Outcome of one checked inequality or identity.

    Attributes:
        check_id: Stable identifier, e.g. ``invariants.counting_identity.standard``
        anchor: Reference string naming the statement being checked
        passed: Whether the check holds
        detail: Short human-readable detail (values, slack)
    """

    check_id: str
    anchor: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class InvariantReport:
    """Everything a job produced, ready for serialisation.

    Wall-clock timings and curve rows are kept out of to_dict(): timings go
    to their own file so that the report is reproducible byte for byte, and
    curves are written as CSV.
    """

    config: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    assertions: List[AssertionRecord] = field(default_factory=list)
    task_status: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    curves: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)
    version: str = __version__

    @property
    def all_passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def failed_checks(self) -> List[str]:
        return [a.check_id for a in self.assertions if not a.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "config": self.config,
            "results": self.results,
            "tasks": self.task_status,
            "assertions": [a.to_dict() for a in self.assertions],
            "summary": {
                "assertions_total": len(self.assertions),
                "assertions_failed": len(self.failed_checks),
                "all_passed": self.all_passed,
            },
        }


def fraction_to_dict(value: Optional[Fraction]) -> Optional[Dict[str, Any]]:
    if value is None:
        return None
    value = Fraction(value)
    return {"value": float(value), "exact": f"{value.numerator}/{value.denominator}"}
