import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from cayley_isoperimetry.config.config_manager import ConfigManager
from cayley_isoperimetry.exceptions import ConfigValidationError, ToolkitError
from cayley_isoperimetry.groups.base import GroupBackend
from cayley_isoperimetry.groups.factory import GROUP_TYPES, backend_from_descriptor
from cayley_isoperimetry.groups.symmetric_set import SymmetricSet, build_symmetric_set
from cayley_isoperimetry.logging.manager import LoggerManager
from cayley_isoperimetry.model.report import AssertionRecord, InvariantReport
from cayley_isoperimetry.model.task.base import TaskContext
from cayley_isoperimetry.model.task.config import TaskConfig
from cayley_isoperimetry.model.task.result import TaskResult
from cayley_isoperimetry.tasks import TASK_REGISTRY
from cayley_isoperimetry.utils.ball_cache import BallCache
from cayley_isoperimetry.utils.datetime_ops import get_utc_now_formatted, seconds_since

JOB_KEYS = (
    "name",
    "description",
    "group",
    "set",
    "sets",
    "tasks",
    "params",
    "seed",
    "output",
    "threads",
)
TASK_KEYS = ("name", "type", "params", "depends_on")
ANCHOR_TASK = "task completed without error"

# params whose cap has a different name in settings
CAP_ALIASES = {
    ("cogrowth", "k_max"): "cogrowth_k_max",
    ("spectral", "compression_radii"): "radius",
    ("littlewood", "t1_truncation"): "truncation",
}


@dataclass
class JobConfig:
    """A validated job: one group, its generating sets and the tasks to run on them."""

    group: Dict[str, Any]
    sets: List[Dict[str, Any]]
    tasks: List[TaskConfig]
    seed: int = 0
    output: Optional[str] = None
    threads: Optional[int] = None
    name: str = "job"
    description: str = ""

    @classmethod
    def from_dict(cls, data: Any, caps: Optional[Dict[str, Any]] = None) -> "JobConfig":
        """Validate a parsed job config.

        Raises:
            ConfigValidationError: any schema or cap violation
        """
        if not isinstance(data, dict):
            raise ConfigValidationError("Job config must be a JSON object")
        unknown = sorted(set(data) - set(JOB_KEYS))
        if unknown:
            raise ConfigValidationError(
                f"Unknown job config keys: {', '.join(unknown)}"
            )

        group = data.get("group")
        if not isinstance(group, dict) or "type" not in group:
            raise ConfigValidationError("'group' must be an object with a 'type'")
        if group["type"] not in GROUP_TYPES:
            raise ConfigValidationError(
                f"Unknown group type '{group['type']}' "
                f"(expected one of {', '.join(GROUP_TYPES)})"
            )

        if "set" in data and "sets" in data:
            raise ConfigValidationError("Give either 'set' or 'sets', not both")
        default_sets = [data["set"]] if "set" in data else [{"kind": "standard"}]
        sets = data.get("sets", default_sets)
        if not isinstance(sets, list) or not sets:
            raise ConfigValidationError("'sets' must be a non-empty list")
        if not all(isinstance(s, dict) for s in sets):
            raise ConfigValidationError("'sets' must be a list of set descriptors")

        shared_params = data.get("params", {})
        if not isinstance(shared_params, dict):
            raise ConfigValidationError("'params' must be an object keyed by task name")
        tasks = _parse_tasks(data.get("tasks"), shared_params)
        for task in tasks:
            _check_caps(task, caps or {})

        seed = data.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ConfigValidationError(f"'seed' must be an integer, got {seed!r}")
        threads = data.get("threads")
        if threads is not None and (not isinstance(threads, int) or threads < 1):
            raise ConfigValidationError(
                f"'threads' must be a positive integer, got {threads!r}"
            )
        output = data.get("output")
        if output is not None and not isinstance(output, str):
            raise ConfigValidationError("'output' must be a path string")

        return cls(
            group=group,
            sets=sets,
            tasks=tasks,
            seed=seed,
            output=output,
            threads=threads,
            name=str(data.get("name", "job")),
            description=str(data.get("description", "")),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "group": self.group,
            "sets": self.sets,
            "tasks": [
                {
                    "name": t.name,
                    "type": t.task_type,
                    "params": t.params,
                    "depends_on": t.depends_on,
                }
                for t in self.tasks
            ],
            "seed": self.seed,
        }


def _parse_tasks(raw: Any, shared_params: Dict[str, Any]) -> List[TaskConfig]:
    if not isinstance(raw, list) or not raw:
        raise ConfigValidationError("'tasks' must be a non-empty list")
    tasks: List[TaskConfig] = []
    seen = set()
    for entry in raw:
        # A bare string is a task with default params
        if isinstance(entry, str):
            entry = {"name": entry}
        if not isinstance(entry, dict) or "name" not in entry:
            raise ConfigValidationError(
                f"Task entry must be a name or an object with 'name': {entry!r}"
            )
        unknown = sorted(set(entry) - set(TASK_KEYS))
        if unknown:
            raise ConfigValidationError(
                f"Unknown keys in task '{entry['name']}': {', '.join(unknown)}"
            )
        name = str(entry["name"])
        # Type defaults to the name, so one task type can run twice under two names
        task_type = str(entry.get("type", name))
        if task_type not in TASK_REGISTRY:
            raise ConfigValidationError(
                f"Unknown task type '{task_type}' "
                f"(expected one of {', '.join(TASK_REGISTRY)})"
            )
        if name in seen:
            raise ConfigValidationError(f"Duplicate task name '{name}'")
        depends_on = entry.get("depends_on", [])
        if not isinstance(depends_on, list):
            raise ConfigValidationError(
                f"'depends_on' of task '{name}' must be a list"
            )
        # Dependencies must be declared earlier; this also rules out cycles
        missing = [d for d in depends_on if d not in seen]
        if missing:
            raise ConfigValidationError(
                f"Task '{name}' depends on tasks not declared before it: "
                f"{', '.join(map(str, missing))}"
            )
        # Shared params first, inline params override them
        params = dict(shared_params.get(name, {}) or {})
        if not isinstance(entry.get("params", {}), dict):
            raise ConfigValidationError(
                f"'params' of task '{name}' must be an object"
            )
        params.update(entry.get("params", {}))
        seen.add(name)
        tasks.append(
            TaskConfig(
                name=name, task_type=task_type, depends_on=depends_on, params=params
            )
        )
    return tasks


def _check_caps(task: TaskConfig, caps: Dict[str, Any]) -> None:
    for key, value in task.params.items():
        cap = caps.get(CAP_ALIASES.get((task.task_type, key), key))
        if cap is None:
            continue
        # Lists such as compression_radii are capped element by element
        values = value if isinstance(value, list) else [value]
        for v in values:
            if isinstance(v, (int, float)) and not isinstance(v, bool) and v > cap:
                raise ConfigValidationError(
                    f"Task '{task.name}': {key}={v} exceeds the desk-scale cap {cap}"
                )


def load_job_config(path: Path, caps: Optional[Dict[str, Any]] = None) -> JobConfig:
    """Read and validate a JSON job config.

    Raises:
        ConfigValidationError: invalid JSON or schema violation
        OSError: the file cannot be read
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigValidationError(f"Job config {path} is not valid JSON: {e}")
    return JobConfig.from_dict(data, caps)


def group_label(descriptor: Dict[str, Any]) -> str:
    """Short label for check ids, e.g. ``cyclic6`` or ``free2``."""
    group_type = descriptor["type"]
    for key in ("n", "rank"):
        if key in descriptor:
            return f"{group_type}{descriptor[key]}"
    if "orders" in descriptor:
        return f"{group_type}{'-'.join(str(o) for o in descriptor['orders'])}"
    return group_type


class JobHandler:
    """Runs the tasks of a job in declared order and assembles the report.

    A task runs only when its dependencies succeeded. The first failed task
    stops the job; the remaining tasks are recorded as skipped.
    """

    def __init__(
        self,
        conf: ConfigManager,
        logger_manager: LoggerManager,
        ball_cache: Optional[BallCache] = None,
        threads: int = 1,
        show_progress: bool = False,
    ):
        self.conf = conf
        self.logger_manager = logger_manager
        self.ball_cache = ball_cache
        self.threads = threads
        self.show_progress = show_progress
        self.logger = logger_manager.get_logger("workflow.JobHandler")

    def build_inputs(self, job: JobConfig) -> Tuple[GroupBackend, List[SymmetricSet]]:
        """Group backend and generating sets with unique labels.

        Raises:
            ConfigValidationError: the descriptors do not build
        """
        try:
            backend = backend_from_descriptor(job.group)
            sets = [build_symmetric_set(backend, d) for d in job.sets]
        except ToolkitError as e:
            raise ConfigValidationError(f"Invalid group or set descriptor: {e}")
        unique: List[SymmetricSet] = []
        counts: Dict[str, int] = {}
        # Duplicate labels get a #2, #3, ... suffix
        for s in sets:
            counts[s.label] = counts.get(s.label, 0) + 1
            label = s.label if counts[s.label] == 1 else f"{s.label}#{counts[s.label]}"
            unique.append(SymmetricSet(s.elements, s.contains_identity, label))
        return backend, unique

    async def run(self, job: JobConfig, seed: Optional[int] = None) -> InvariantReport:
        backend, sets = self.build_inputs(job)
        seed = job.seed if seed is None else seed
        label = group_label(job.group)
        config_echo = job.to_dict()
        config_echo["seed"] = seed
        report = InvariantReport(config=config_echo)

        self.logger.info(
            f"Running job '{job.name}' on {backend!r} with {len(sets)} set(s): "
            f"{', '.join(t.name for t in job.tasks)}"
        )
        results: Dict[str, TaskResult] = {}
        job_data: Dict[str, Any] = {}
        # Execute tasks in declared order
        for i, task_config in enumerate(job.tasks):
            failed_deps = [
                d
                for d in task_config.depends_on
                if d not in results or not results[d].success
            ]
            if failed_deps:
                # Record the failure and skip everything after it
                error_msg = (
                    f"Dependencies failed for {task_config.name}: "
                    f"{', '.join(failed_deps)}"
                )
                self.logger.error(error_msg)
                results[task_config.name] = TaskResult(
                    task_name=task_config.name,
                    success=False,
                    created_at=get_utc_now_formatted(),
                    error=error_msg,
                )
                self._mark_remaining_tasks_as_failed(
                    job.tasks[i + 1 :],
                    results,
                    "Skipped due to job failure: dependency chain broken",
                )
                break

            # Each task sees a snapshot of earlier results
            context = TaskContext(
                conf=self.conf,
                logger_manager=self.logger_manager,
                backend=backend,
                generating_sets=sets,
                group_label=label,
                params=task_config.params,
                job_data=dict(job_data),
                ball_cache=self.ball_cache,
                seed=seed,
                threads=self.threads,
                show_progress=self.show_progress,
            )
            task = TASK_REGISTRY[task_config.task_type](context)
            self.logger.info(
                f"Executing task '{task_config.name}' "
                f"of type '{task_config.task_type}' "
                f"with params {task_config.params}"
            )
            started = time.perf_counter()
            result = await task.execute()
            result.elapsed = seconds_since(started)
            result.task_name = task_config.name
            results[task_config.name] = result
            self.logger.debug(
                f"Parameter sources for {task_config.name}: {context.param_sources}"
            )

            # Stop on failure but keep a status for every remaining task
            if not result.success:
                self.logger.error(
                    f"Job stopped: {task_config.name} failed: {result.error}"
                )
                self._mark_remaining_tasks_as_failed(
                    job.tasks[i + 1 :],
                    results,
                    f"Skipped due to failure of {task_config.name}",
                )
                break
            job_data[task_config.name] = result.data or {}

        # Collect in declared order so reruns produce identical reports
        for task_config in job.tasks:
            result = results[task_config.name]
            self._collect(report, task_config, result)

        self.logger.info(
            f"Job '{job.name}' finished: {len(report.assertions)} assertions, "
            f"{len(report.failed_checks)} failed"
        )
        return report

    @staticmethod
    def _collect(
        report: InvariantReport, task_config: TaskConfig, result: TaskResult
    ) -> None:
        report.task_status[task_config.name] = {
            "type": task_config.task_type,
            "success": result.success,
            "error": result.error,
            "warning": result.warning,
        }
        report.timings[task_config.name] = result.elapsed
        if result.success:
            report.results[task_config.name] = {
                "data": result.data,
                "metrics": result.metrics,
            }
        else:
            report.assertions.append(
                AssertionRecord(
                    f"task.{task_config.name}", ANCHOR_TASK, False, result.error or ""
                )
            )
        report.assertions += result.assertions
        for curve, rows in result.curves.items():
            report.curves[f"{task_config.name}.{curve}"] = rows

    def _mark_remaining_tasks_as_failed(
        self,
        remaining_configs: List[TaskConfig],
        results: Dict[str, TaskResult],
        error_message: str,
    ) -> None:
        for remaining_config in remaining_configs:
            results[remaining_config.name] = TaskResult(
                task_name=remaining_config.name,
                success=False,
                created_at=get_utc_now_formatted(),
                error=error_message,
                metrics={"skipped_due_to_job_failure": True},
            )
