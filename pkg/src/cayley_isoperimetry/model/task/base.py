from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

from cayley_isoperimetry.config.config_manager import (
    ConfigManager,
    ConfigSource,
    Parameter,
)
from cayley_isoperimetry.exceptions import ParameterError
from cayley_isoperimetry.groups.base import Element, GroupBackend
from cayley_isoperimetry.groups.symmetric_set import SymmetricSet, ball_layers
from cayley_isoperimetry.logging.manager import LoggerManager
from cayley_isoperimetry.model.task.result import TaskResult
from cayley_isoperimetry.utils.async_progress import run_blocking
from cayley_isoperimetry.utils.ball_cache import BallCache
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted

T = TypeVar("T")


@dataclass()
class TaskContext:
    """Common context for all tasks."""

    conf: ConfigManager
    logger_manager: LoggerManager
    backend: GroupBackend
    generating_sets: List[SymmetricSet]
    group_label: str = "G"
    params: Dict[str, Any] = field(default_factory=dict)  # per-task params from the job
    param_sources: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    job_data: Dict[str, Any] = field(default_factory=dict)  # results of earlier tasks
    ball_cache: Optional[BallCache] = None
    seed: int = 0
    threads: int = 1
    show_progress: bool = False


class Task(ABC):
    """Base interface for job tasks.

    Subclasses declare their defaults as DEFAULT_* class attributes and read
    every tunable through get_parameter(), so the job config, environment and
    settings files can override them.
    """

    def __init__(self, context: TaskContext):
        self.context = context
        self.logger = context.logger_manager.get_logger(
            f"tasks.{self.__class__.__name__}"
        )

    @abstractmethod
    async def execute(self) -> TaskResult:
        """Execute task with unified context."""
        pass

    @property
    @abstractmethod
    def name(self) -> str:
        """Task identifier, also the settings scope of its parameters."""
        pass

    def get_parameter(self, name: str, default: Any = None) -> Any:
        """Get parameter with automatic resolution and tracking."""
        parameter: Parameter = self.context.conf.get_param(
            key=name,
            job_params=self.context.params,
            task_scope=self.name,
            default=default,
        )
        self._track_param_resolution(name, parameter.value, parameter.source)
        return parameter.value

    def get_capped_int(
        self, name: str, default: int, cap_key: Optional[str] = None
    ) -> int:
        """Integer parameter checked against ``caps.<cap_key>`` from the settings.

        Raises:
            ParameterError: value not an integer or above its cap
        """
        raw = self.get_parameter(name, default=default)
        try:
            value = int(raw)
        except (TypeError, ValueError):
            raise ParameterError(f"Parameter '{name}' must be an integer, got {raw!r}")
        cap = self.context.conf.get(f"caps.{cap_key or name}")
        if cap is not None and value > int(cap):
            raise ParameterError(
                f"Parameter '{name}'={value} exceeds the desk-scale cap {cap}"
            )
        return value

    def seed(self) -> int:
        return int(self.get_parameter("seed", default=self.context.seed))

    def layers(self, generators: Sequence[Element], radius: int) -> List[List[Element]]:
        """Ball layers through the persistent cache when one is configured."""
        if self.context.ball_cache is not None:
            return self.context.ball_cache.layers(
                self.context.backend, generators, radius
            )
        return ball_layers(self.context.backend, generators, radius)

    async def per_set(
        self, work: Callable[[SymmetricSet], T], unit: str = "sets"
    ) -> List[T]:
        """Apply ``work`` to every generating set on the worker threads, in order."""
        jobs = [lambda s=s: work(s) for s in self.context.generating_sets]
        return await run_blocking(
            jobs,
            desc=self.name,
            logger=self.logger,
            threads=self.context.threads,
            unit=unit,
            show_progress=self.context.show_progress,
        )

    def failure(self, error: Exception, metrics: Optional[dict] = None) -> TaskResult:
        self.logger.error(f"{self.name} failed: {error}", exc_info=True)
        return TaskResult(
            task_name=self.name,
            success=False,
            created_at=get_utc_now_formatted(),
            error=f"{type(error).__name__}: {error}",
            metrics=metrics or {},
        )

    def _track_param_resolution(
        self, name: str, value: Any, source: ConfigSource
    ) -> None:
        self.context.param_sources[name] = {"value": value, "source": source.name}
