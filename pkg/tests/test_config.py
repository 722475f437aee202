"""test_config.py"""
import configparser
import os

import pytest

from modules import config


def test_ensure_config_creates_defaults(config_dir):
    path = config.ensure_config()
    assert path == os.path.join(str(config_dir), "config.ini")
    parser = configparser.ConfigParser()
    parser.read(path)
    assert parser.get("GENERAL", "SCHEMA") == config.CONFIG_SCHEMA
    assert parser.get("ORACLE", "TOL") == "1e-13"


def test_set_then_get():
    config.config_set("SOLVER", "ROOT TOL", "1e-8")
    assert config.config_get("SOLVER", "ROOT TOL") == "1e-8"
    assert config.config_float("SOLVER", "ROOT TOL") == 1e-8


def test_unparsable_value_falls_back_to_default():
    config.config_set("SOLVER", "MAX ITERATIONS", "many")
    assert config.config_int("SOLVER", "MAX ITERATIONS") == 10000
    config.config_set("VALIDATION", "ODE TOL", "loose")
    assert config.config_float("VALIDATION", "ODE TOL") == 1e-3


def test_overrides_shadow_the_file():
    config.config_set("SOLVER", "RESIDUAL", "1e-6")
    config.set_overrides({("SOLVER", "RESIDUAL"): 1e-12})
    assert config.config_float("SOLVER", "RESIDUAL") == 1e-12
    config.clear_overrides()
    assert config.config_float("SOLVER", "RESIDUAL") == 1e-6


def test_unknown_override_rejected():
    with pytest.raises(KeyError):
        config.set_overrides({("SOLVER", "PATIENCE"): 3})


def test_outdated_file_is_rebuilt(config_dir):
    os.makedirs(config_dir, exist_ok=True)
    path = os.path.join(str(config_dir), "config.ini")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("[GENERAL]\nschema = 0\n[SERIES]\nmax terms = 3\n")

    config.ensure_config()
    parser = configparser.ConfigParser()
    parser.read(path)
    assert parser.get("GENERAL", "SCHEMA") == config.CONFIG_SCHEMA
    assert not parser.has_section("SERIES")
    assert parser.has_section("TRAJECTORY")
