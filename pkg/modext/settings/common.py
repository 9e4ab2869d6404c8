"""
Common settings for the modext app.
"""

import os

# Default value of each cap setting. Every one can be overridden by an
# environment variable of the same name.
CAP_DEFAULTS = {
    "MODEXT_MAX_GROUP_ORDER": 1024,
    "MODEXT_MAX_HOM_COUNT": 10**7,
    "MODEXT_ORACLE_MAX_ORDER": 1296,
    "MODEXT_ORACLE_MAX_NODES": 10**7,
    "MODEXT_DIGRAPH_BRUTE_FORCE_MAX_VERTICES": 20,
    "MODEXT_MAX_PAIR_CHECKS": 250_000,
}


def env_int(name: str, default: int) -> int:
    """Read an integer override from the environment.

    Args:
        name: Environment variable name.
        default: Value used when the variable is unset or empty.

    Returns:
        int: The parsed value.

    Raises:
        ValueError: If the variable is set to something that is not a positive integer.
    """
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    value = int(raw.replace("_", ""))
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


def plugin_settings(settings):
    """
    Configure the modext settings.

    Installs the default caps and log level on ``settings`` unless the
    project already defines them.

    Args:
        settings: The Django settings object
    """
    for name, default in CAP_DEFAULTS.items():
        if not hasattr(settings, name):
            setattr(settings, name, env_int(name, default))

    # Log level for every ``modext.*`` logger.
    if not hasattr(settings, "MODEXT_LOG_LEVEL"):
        settings.MODEXT_LOG_LEVEL = os.environ.get("MODEXT_LOG_LEVEL", "WARNING").upper()
