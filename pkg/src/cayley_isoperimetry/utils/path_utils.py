import os
from pathlib import Path
from typing import Optional


def resolve_config_path(filename: str, env_var_name: str = "CIT_CONFIGS_DIR") -> Path:
    """Resolve configuration file path by checking multiple locations.

    Follows this resolution order:
    1. Environment variable (default: CIT_CONFIGS_DIR)
    2. ./configs directory relative to current working directory
    3. The configs directory of a source checkout

    Args:
        filename: Name of the config file to find
        env_var_name: Environment variable to check for config directory

    Returns:
        Path: Resolved path to the configuration file
    """
    default_config_dir = Path(__file__).parent.parent.parent.parent / "configs"

    if env_var_name in os.environ:
        env_path = Path(os.environ[env_var_name]) / filename
        if env_path.exists():
            return env_path

    locations = [
        Path.cwd() / "configs" / filename,
        default_config_dir / filename,
    ]
    for path in locations:
        if path.exists():
            return path

    # Missing files are reported by the caller
    return default_config_dir / filename


def resolve_cache_dir(
    configured: Optional[str], env_var_name: str = "CIT_CACHE_DIR"
) -> Path:
    """Cache directory from the environment, else from settings, else ./cache."""
    if os.environ.get(env_var_name):
        return Path(os.environ[env_var_name])
    return Path(configured or "cache")
