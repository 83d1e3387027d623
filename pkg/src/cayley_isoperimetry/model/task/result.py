from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from cayley_isoperimetry.model.report import AssertionRecord


@dataclass
class TaskResult:
    """Container for standardized task results.

    Attributes:
        task_name: Name of the task that generated this result
        success: Whether the task completed (failed assertions still count)
        created_at: Timestamp of result creation
        data: Task-specific numeric output, every number tagged with provenance
        error: Error message if task failed
        warning: Warning message for non-error edge cases
        metrics: Task-specific counters (sets processed, cache hits, ...)
        assertions: Checked inequalities and identities
        curves: CSV name -> rows
        elapsed: Wall-clock seconds, reported apart from the numeric results
    """

    task_name: str
    success: bool
    created_at: str
    data: Optional[Any] = None
    error: Optional[str] = None
    warning: Optional[str] = None
    metrics: Optional[dict] = None
    assertions: List[AssertionRecord] = field(default_factory=list)
    curves: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def all_passed(self) -> bool:
        return self.success and all(a.passed for a in self.assertions)
