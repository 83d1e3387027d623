import json
import tempfile
from pathlib import Path
from typing import Any, Callable, Dict, Generator, List, Optional
from unittest.mock import MagicMock

import pytest
import yaml

from cayley_isoperimetry.config.config_manager import ConfigManager
from cayley_isoperimetry.groups.base import GroupBackend
from cayley_isoperimetry.groups.symmetric_set import build_symmetric_set
from cayley_isoperimetry.model.task.base import TaskContext

TEST_SETTINGS: Dict[str, Any] = {
    "logging": {"level": "WARNING"},
    "cache": {"enabled": False},
    "caps": {
        "pool_radius": 4,
        "max_subset": 4096,
        "k_max": 12,
        "cogrowth_k_max": 40,
        "radius": 6,
        "rd_d_max": 6,
        "samples": 20000,
        "truncation": 6,
        "box_support": 100000,
        "max_support": 1000000,
    },
}


@pytest.fixture
def temp_config_files() -> Generator[Path, None, None]:
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture
def settings_path(temp_config_files: Path) -> Path:
    """settings.yaml with the desk-scale caps and quiet logging."""
    path = temp_config_files / "settings.yaml"
    with open(path, "w") as f:
        yaml.dump(TEST_SETTINGS, f)
    return path


@pytest.fixture
def config_manager(settings_path: Path) -> ConfigManager:
    return ConfigManager(config_path=settings_path, environment="test")


@pytest.fixture
def make_context(config_manager: ConfigManager) -> Callable[..., TaskContext]:
    """Factory for task contexts on a backend and a list of set descriptors."""

    def _make(
        backend: GroupBackend,
        sets: Optional[List[Dict[str, Any]]] = None,
        params: Optional[Dict[str, Any]] = None,
        group_label: str = "G",
        seed: int = 0,
    ) -> TaskContext:
        descriptors = sets or [{"kind": "standard"}]
        return TaskContext(
            conf=config_manager,
            logger_manager=MagicMock(),
            backend=backend,
            generating_sets=[build_symmetric_set(backend, d) for d in descriptors],
            group_label=group_label,
            params=dict(params or {}),
            seed=seed,
        )

    return _make


@pytest.fixture
def job_file(temp_config_files: Path) -> Callable[..., Path]:
    """Write a job dict as JSON next to the settings and return its path."""

    def _write(job: Dict[str, Any], name: str = "job.json") -> Path:
        path = temp_config_files / name
        path.write_text(json.dumps(job), encoding="utf-8")
        return path

    return _write
