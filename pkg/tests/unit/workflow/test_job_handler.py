from pathlib import Path
from typing import Any, Callable, Dict
from unittest.mock import MagicMock

import pytest

from cayley_isoperimetry.config.config_manager import ConfigManager
from cayley_isoperimetry.exceptions import ConfigValidationError
from cayley_isoperimetry.logging.manager import LoggerManager
from cayley_isoperimetry.workflow.job_handler import (
    CAP_ALIASES,
    JobConfig,
    JobHandler,
    group_label,
    load_job_config,
)

CAPS = {
    "k_max": 12,
    "cogrowth_k_max": 40,
    "radius": 6,
    "truncation": 6,
    "pool_radius": 4,
}


def _job(**overrides: Any) -> Dict[str, Any]:
    job: Dict[str, Any] = {
        "name": "cyclic6",
        "group": {"type": "cyclic", "n": 6},
        "tasks": ["invariants"],
    }
    job.update(overrides)
    return job


@pytest.fixture
def handler(config_manager: ConfigManager) -> JobHandler:
    return JobHandler(config_manager, MagicMock())


def test_handler_logs_under_a_single_package_prefix(
    config_manager: ConfigManager,
) -> None:
    manager = MagicMock()
    manager.get_logger.side_effect = lambda name: LoggerManager.get_logger(
        manager, name
    )
    handler = JobHandler(config_manager, manager)
    assert handler.logger.name == "cayley_isoperimetry.workflow.JobHandler"


def test_minimal_job_defaults() -> None:
    job = JobConfig.from_dict(_job())
    assert job.sets == [{"kind": "standard"}]
    assert job.seed == 0
    assert job.output is None
    assert [(t.name, t.task_type) for t in job.tasks] == [("invariants", "invariants")]


def test_task_params_merge_shared_and_inline() -> None:
    job = JobConfig.from_dict(
        _job(
            params={"invariants": {"pool_radius": 2, "local_steps": 10}},
            tasks=[
                {"name": "invariants", "params": {"pool_radius": 3}},
                {"name": "walks", "type": "spectral", "depends_on": ["invariants"]},
            ],
        )
    )
    first, second = job.tasks
    assert first.params == {"pool_radius": 3, "local_steps": 10}
    assert second.task_type == "spectral"
    assert second.depends_on == ["invariants"]
    assert job.to_dict()["tasks"][1] == {
        "name": "walks",
        "type": "spectral",
        "params": {},
        "depends_on": ["invariants"],
    }


@pytest.mark.parametrize(
    "overrides, message",
    [
        ({"colour": "red"}, "Unknown job config keys"),
        ({"group": {"rank": 2}}, "'group'"),
        ({"group": {"type": "braid"}}, "Unknown group type"),
        ({"set": {"kind": "standard"}, "sets": []}, "either 'set' or 'sets'"),
        ({"sets": []}, "non-empty list"),
        ({"tasks": []}, "non-empty list"),
        ({"tasks": ["painting"]}, "Unknown task type"),
        ({"tasks": ["invariants", "invariants"]}, "Duplicate task name"),
        (
            {"tasks": [{"name": "spectral", "depends_on": ["invariants"]}]},
            "not declared",
        ),
        ({"tasks": [{"name": "spectral", "when": "now"}]}, "Unknown keys in task"),
        ({"seed": "zero"}, "'seed'"),
        ({"threads": 0}, "'threads'"),
        ({"output": 3}, "'output'"),
        ({"params": []}, "'params'"),
    ],
)
def test_job_config_errors(overrides: Dict[str, Any], message: str) -> None:
    with pytest.raises(ConfigValidationError, match=message):
        JobConfig.from_dict(_job(**overrides))


def test_job_config_must_be_an_object() -> None:
    with pytest.raises(ConfigValidationError, match="JSON object"):
        JobConfig.from_dict([_job()])


def test_caps_are_checked_per_task() -> None:
    ok = _job(tasks=[{"name": "cogrowth", "params": {"k_max": 30}}])
    assert JobConfig.from_dict(ok, CAPS).tasks[0].params["k_max"] == 30

    too_deep = _job(tasks=[{"name": "spectral", "params": {"k_max": 30}}])
    with pytest.raises(ConfigValidationError, match="cap 12"):
        JobConfig.from_dict(too_deep, CAPS)

    radii = _job(tasks=[{"name": "spectral", "params": {"compression_radii": [2, 9]}}])
    with pytest.raises(ConfigValidationError, match="compression_radii=9"):
        JobConfig.from_dict(radii, CAPS)

    assert CAP_ALIASES[("littlewood", "t1_truncation")] == "truncation"


def test_load_job_config(job_file: Callable[..., Path]) -> None:
    job = load_job_config(job_file(_job(seed=4)))
    assert job.seed == 4
    assert job.name == "cyclic6"

    broken = job_file({}, name="broken.json")
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigValidationError, match="not valid JSON"):
        load_job_config(broken)
    with pytest.raises(OSError):
        load_job_config(broken.parent / "absent.json")


@pytest.mark.parametrize(
    "descriptor, label",
    [
        ({"type": "cyclic", "n": 6}, "cyclic6"),
        ({"type": "free", "rank": 2}, "free2"),
        ({"type": "free_product_cyclic", "orders": [2, 3]}, "free_product_cyclic2-3"),
        ({"type": "lamplighter"}, "lamplighter"),
    ],
)
def test_group_label(descriptor: Dict[str, Any], label: str) -> None:
    assert group_label(descriptor) == label


def test_duplicate_set_labels_are_suffixed(handler: JobHandler) -> None:
    job = JobConfig.from_dict(
        _job(
            sets=[
                {"kind": "standard"},
                {"kind": "standard"},
                {"kind": "ball", "radius": 1},
            ]
        )
    )
    backend, sets = handler.build_inputs(job)
    assert [s.label for s in sets] == ["standard", "standard#2", "ball1"]
    assert backend.order() == 6


def test_bad_descriptor_is_a_config_error(handler: JobHandler) -> None:
    job = JobConfig.from_dict(_job(sets=[{"kind": "sphere"}]))
    with pytest.raises(ConfigValidationError, match="radius"):
        handler.build_inputs(job)


async def test_run_collects_results(handler: JobHandler) -> None:
    job = JobConfig.from_dict(_job(seed=3))
    report = await handler.run(job)
    assert report.config["seed"] == 3
    assert report.task_status["invariants"]["success"]
    assert report.all_passed
    h = report.results["invariants"]["data"]["sets"]["standard"]["h"]
    assert h["value"] == 0.0
    assert "invariants.cheeger_trend" in report.curves
    assert report.timings["invariants"] >= 0

    rerun = await handler.run(job, seed=9)
    assert rerun.config["seed"] == 9


async def test_first_failure_stops_the_job(handler: JobHandler) -> None:
    job = JobConfig.from_dict(
        _job(group={"type": "cyclic", "n": 5}, tasks=["cogrowth", "invariants"])
    )
    report = await handler.run(job)
    assert not report.task_status["cogrowth"]["success"]
    assert "at least two" in report.task_status["cogrowth"]["error"]
    error = report.task_status["invariants"]["error"]
    assert error == "Skipped due to failure of cogrowth"
    assert report.failed_checks == ["task.cogrowth", "task.invariants"]
    assert "invariants" not in report.results


async def test_dependent_task_runs_after_its_dependency(handler: JobHandler) -> None:
    job = JobConfig.from_dict(
        _job(
            tasks=[
                "invariants",
                {
                    "name": "colour",
                    "depends_on": ["invariants"],
                    "params": {"alpha": 1.0},
                },
            ]
        )
    )
    report = await handler.run(job)
    assert list(report.task_status) == ["invariants", "colour"]
    assert report.all_passed
