"""
Tests for loading settings from YAML.
"""

import logging

import pytest

from ihull_config import CONFIG_PATH, Settings, load_settings
from ihull_errors import ValidationError


def write(tmp_path, text):
    path = tmp_path / "ihull.yaml"
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadSettings:
    """Tests for load_settings."""

    def test_shipped_file_matches_defaults(self):
        """config/ihull.yaml restates the built-in defaults."""
        assert CONFIG_PATH.exists()
        assert load_settings() == Settings()

    def test_sections_map_onto_fields(self, tmp_path):
        path = write(
            tmp_path,
            "limits:\n  max_hull: 50\nfree_product:\n  syllable_bound: 2\n"
            "logging:\n  level: DEBUG\n  events: ev.jsonl\n",
        )
        settings = load_settings(path)
        assert settings.max_hull == 50
        assert settings.fp_syllable_bound == 2
        assert settings.log_level == "DEBUG"
        assert settings.events_file == "ev.jsonl"
        assert settings.max_cover == Settings().max_cover

    def test_empty_file(self, tmp_path):
        assert load_settings(write(tmp_path, "")) == Settings()

    def test_missing_explicit_file(self, tmp_path):
        with pytest.raises(ValidationError, match="config file not found"):
            load_settings(tmp_path / "absent.yaml")

    def test_missing_default_file(self, mocker, tmp_path):
        mocker.patch("ihull_config.CONFIG_PATH", tmp_path / "absent.yaml")
        assert load_settings() == Settings()

    def test_unknown_section(self, tmp_path):
        with pytest.raises(ValidationError, match="unknown section 'voice'"):
            load_settings(write(tmp_path, "voice:\n  rate: 2\n"))

    def test_unknown_key(self, tmp_path):
        with pytest.raises(ValidationError, match="unknown key limits.max_words"):
            load_settings(write(tmp_path, "limits:\n  max_words: 3\n"))

    def test_section_must_be_a_mapping(self, tmp_path):
        with pytest.raises(ValidationError, match="must be a mapping"):
            load_settings(write(tmp_path, "limits: 5\n"))

    @pytest.mark.parametrize("value", ["0", "-4", "true", "many"])
    def test_limits_are_positive_integers(self, tmp_path, value):
        with pytest.raises(ValidationError, match="positive integer"):
            load_settings(write(tmp_path, f"limits:\n  max_cover: {value}\n"))

    def test_null_only_where_optional(self, tmp_path):
        assert load_settings(write(tmp_path, "logging:\n  file: null\n")).log_file is None
        with pytest.raises(ValidationError, match="may not be null"):
            load_settings(write(tmp_path, "logging:\n  level: null\n"))

    def test_broken_yaml(self, tmp_path):
        with pytest.raises(ValidationError, match="cannot parse"):
            load_settings(write(tmp_path, "limits: [1\n"))


class TestSettings:
    """Tests for the Settings value."""

    def test_override_skips_none(self):
        settings = Settings().override(max_hull=7, max_cover=None, oracle=True)
        assert settings.max_hull == 7
        assert settings.max_cover == 20
        assert settings.oracle

    def test_log_level_number(self):
        assert Settings(log_level="debug").log_level_number == logging.DEBUG

    def test_unknown_log_level(self):
        with pytest.raises(ValidationError, match="unknown log level"):
            Settings(log_level="LOUD").log_level_number
