#!/usr/bin/env python3
"""Tests for settings and the logger."""

import json

from src.utils import config
from src.utils.config import MAX_WORKERS_ENV, load_settings, max_workers_from_env
from src.utils.logger import get_logger


def test_max_workers_from_env(monkeypatch):
    monkeypatch.delenv(MAX_WORKERS_ENV, raising=False)
    assert max_workers_from_env() == 1
    monkeypatch.setenv(MAX_WORKERS_ENV, "4")
    assert max_workers_from_env() == 4
    monkeypatch.setenv(MAX_WORKERS_ENV, "0")
    assert max_workers_from_env() == 1
    monkeypatch.setenv(MAX_WORKERS_ENV, "many")
    assert max_workers_from_env() == 1


def test_load_settings_defaults(monkeypatch, tmp_path):
    monkeypatch.setattr(config, "CONFIG_FILE", tmp_path / "config.json")
    monkeypatch.setenv(MAX_WORKERS_ENV, "2")
    assert load_settings() == {"engine": {"max_workers": 2}}


def test_load_settings_merges_saved_values(monkeypatch, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"engine": {"max_workers": 3}, "extra": {"x": 1}}))
    monkeypatch.setattr(config, "CONFIG_FILE", path)
    settings = load_settings()
    assert settings["engine"] == {"max_workers": 3}
    assert settings["extra"] == {"x": 1}


def test_broken_config_file_is_ignored(monkeypatch, tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{not json")
    monkeypatch.setattr(config, "CONFIG_FILE", path)
    monkeypatch.delenv(MAX_WORKERS_ENV, raising=False)
    assert load_settings()["engine"]["max_workers"] == config.DEFAULT_MAX_WORKERS


def test_module_loggers_share_the_app_prefix():
    assert get_logger("src.core.poly").name.startswith("gjps_homology.")
