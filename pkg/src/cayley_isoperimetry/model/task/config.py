from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class TaskConfig:
    """Task configuration container."""

    name: str
    task_type: str
    depends_on: List[str] = field(default_factory=list)
    params: Dict[str, Any] = field(default_factory=dict)
