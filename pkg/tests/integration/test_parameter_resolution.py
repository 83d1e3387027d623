from pathlib import Path

import pytest
import yaml
from pytest import MonkeyPatch

from cayley_isoperimetry.config.config_manager import ConfigManager
from cayley_isoperimetry.exceptions import ParameterError
from cayley_isoperimetry.groups.abelian import CyclicGroup
from cayley_isoperimetry.groups.symmetric_set import standard_generating_set
from cayley_isoperimetry.logging.manager import LoggerManager
from cayley_isoperimetry.model.task.base import Task, TaskContext
from cayley_isoperimetry.model.task.result import TaskResult


class MockTask(Task):
    """Test task implementation."""

    @property
    def name(self) -> str:
        return "test_task"

    async def execute(self) -> TaskResult:
        return TaskResult(
            task_name=self.name, success=True, created_at="", data={}, metrics={}
        )


@pytest.fixture
def setup_test_task(temp_config_files: Path, monkeypatch: MonkeyPatch) -> MockTask:
    """A task whose settings carry global, scoped and capped values."""
    monkeypatch.setenv("CIT_ENV_PARAM", "env_var_value")

    base_settings = {
        "global_param": "base_global_value",
        "test_task": {"task_param": "base_task_value", "radius": 3},
        "caps": {"radius": 4},
    }
    with open(temp_config_files / "settings.yaml", "w") as f:
        yaml.dump(base_settings, f)

    config_manager = ConfigManager(
        config_path=temp_config_files / "settings.yaml", environment="development"
    )
    backend = CyclicGroup(3)
    task_context = TaskContext(
        conf=config_manager,
        logger_manager=LoggerManager(),
        backend=backend,
        generating_sets=[standard_generating_set(backend)],
        params={"job_param": "job_value", "depth": 9},
    )
    return MockTask(task_context)


def test_task_parameter_resolution(setup_test_task: MockTask) -> None:
    task = setup_test_task

    assert task.get_parameter("job_param") == "job_value"
    assert task.get_parameter("env_param") == "env_var_value"
    assert task.get_parameter("global_param") == "base_global_value"
    assert task.get_parameter("task_param") == "base_task_value"
    default = task.get_parameter("non_existent", default="default_value")
    assert default == "default_value"

    sources = task.context.param_sources
    assert sources["job_param"] == {"value": "job_value", "source": "JOB"}
    assert sources["env_param"]["source"] == "ENVIRONMENT_VARIABLE"
    assert sources["task_param"]["source"] == "BASE_SETTINGS"
    assert sources["non_existent"]["source"] == "DEFAULT"


def test_capped_parameters(setup_test_task: MockTask) -> None:
    task = setup_test_task
    assert task.get_capped_int("radius", 1) == 3
    # no cap configured for depth
    assert task.get_capped_int("depth", 1) == 9
    with pytest.raises(ParameterError, match="cap"):
        task.get_capped_int("depth", 1, cap_key="radius")
    task.context.params["radius"] = "wide"
    with pytest.raises(ParameterError, match="integer"):
        task.get_capped_int("radius", 1)


def test_seed_defaults_to_context(setup_test_task: MockTask) -> None:
    task = setup_test_task
    task.context.seed = 42
    assert task.seed() == 42
    task.context.params["seed"] = 7
    assert task.seed() == 7
