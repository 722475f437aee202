#!/usr/bin/env python
"""config.py"""
import configparser
import logging
import os

logger = logging.getLogger(__name__)

# Bump when a key is renamed or removed so stale files get rebuilt
CONFIG_SCHEMA = "1"

DEFAULT_CONFIG = {
    "GENERAL": [("SCHEMA", CONFIG_SCHEMA)],
    "ORACLE": [("TOL", "1e-13")],
    "SOLVER": [
        ("MAX ITERATIONS", "10000"), ("RESIDUAL", "1e-10"),
        ("ROOT TOL", "1e-10")
    ],
    "TRAJECTORY": [("STEPS PER PERIOD", "512"), ("PERIODS AVERAGE", "20")],
    "VALIDATION": [("SERIES TOL", "1e-9"), ("ODE TOL", "1e-3")],
}

_OVERRIDES = {}


def config_dir() -> str:
    """
    Directory holding the configuration file.

    Returns:
        - str: $OPTOBESSEL_CONFIG_DIR when set, otherwise a folder in the
            user's Documents directory.
    """
    override = os.getenv("OPTOBESSEL_CONFIG_DIR")
    if override:
        return override

    document_dir = os.path.join(os.path.expanduser("~"), "Documents")
    return os.path.join(document_dir, "Optomech Bessel")


def ensure_config() -> str:
    """
    Ensure that the config file exists and returns the path.

    Returns:
        - str: The path to the config file.
    """
    directory = config_dir()

    if not os.path.exists(directory):
        # Create the config directory if it doesn't exist
        os.makedirs(directory)

    config_file = os.path.join(directory, "config.ini")

    if os.path.exists(config_file):
        config = configparser.ConfigParser()
        config.read(config_file)

        # Files written by another schema are rebuilt from the defaults
        if config.get("GENERAL", "SCHEMA", fallback=None) == CONFIG_SCHEMA:
            return config_file

        logger.warning("Rebuilding outdated config file %s", config_file)
        os.remove(config_file)

    return create_config(config_file)


def create_config(config_file: str) -> str:
    """
    Create the configuration file with default settings

    Args:
        - config_file (str): The path to the configuration file.

    Returns:
        - str: The path to the created configuration file.
    """
    config = configparser.ConfigParser()

    for section, settings in DEFAULT_CONFIG.items():
        config.add_section(section)
        for key, value in settings:
            config.set(section, key, value)

    with open(config_file, "w", encoding="utf-8") as handle:
        config.write(handle)

    return config_file


def config_get(section: str, key: str) -> str:
    """
    Retrieve a configuration value based on a provided key.

    Args:
        - section (str): The INI section.
        - key (str): The key corresponding to the desired value.

    Returns:
        - str: The configuration value associated to the provided key.
    """
    if (section, key) in _OVERRIDES:
        return _OVERRIDES[(section, key)]

    config = configparser.ConfigParser()
    config.read(ensure_config())

    return config.get(section, key)


def set_overrides(overrides: dict) -> None:
    """
    Shadow file values for the current process only, e.g. the tolerances
    of one CLI run. Keys are (section, key) pairs.
    """
    for (section, key), value in overrides.items():
        _default(section, key)
        _OVERRIDES[(section, key)] = str(value)


def clear_overrides() -> None:
    _OVERRIDES.clear()


def config_set(section: str, key: str, value: str) -> None:
    """
    Set a configuration value for the provided key.

    Args:
        - section (str): The INI section.
        - key (str): The key corresponding to the configuration value
            to be set.
        - value (str): The new value to be assigned
    """
    config_file = ensure_config()

    config = configparser.ConfigParser()
    config.read(config_file)

    if not config.has_section(section):
        config.add_section(section)
    config.set(section, key, value)

    with open(config_file, "w", encoding="utf-8") as handle:
        config.write(handle)


def _default(section: str, key: str) -> str:
    for name, value in DEFAULT_CONFIG[section]:
        if name == key:
            return value
    raise KeyError(f"{section}/{key}")


def config_float(section: str, key: str) -> float:
    """
    Typed getter: the stored value as a float, or the default when the
    stored text does not parse.
    """
    try:
        return float(config_get(section, key))
    except (ValueError, configparser.Error):
        return float(_default(section, key))


def config_int(section: str, key: str) -> int:
    """Typed getter for integer settings, same fallback as config_float."""
    try:
        return int(config_get(section, key))
    except (ValueError, configparser.Error):
        return int(_default(section, key))
