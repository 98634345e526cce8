"""Tests for lpa_chen.config."""

from __future__ import annotations

import textwrap

import pytest

from lpa_chen.config import (
    AlgebraConfig,
    AppConfig,
    Config,
    PathsConfig,
    ReportsConfig,
    load_config,
    validate_config,
)
from lpa_chen.errors import ConfigError


# ------------------------------------------------------------------
# Dataclass defaults
# ------------------------------------------------------------------

class TestDataclassDefaults:
    def test_app_config_defaults(self):
        cfg = AppConfig()
        assert cfg.name == "lpa-chen"
        assert cfg.log_level == "WARNING"

    def test_algebra_config_defaults(self):
        cfg = AlgebraConfig()
        assert cfg.field == "rational"
        assert cfg.modulus is None

    def test_paths_config_defaults(self):
        cfg = PathsConfig()
        assert cfg.max_len == 4
        assert cfg.probe_depth == 6
        assert cfg.kernel_horizon is None

    def test_reports_config_defaults(self):
        cfg = ReportsConfig()
        assert cfg.json_indent == 2
        assert cfg.witness_limit == 5

    def test_config_sections(self):
        cfg = Config()
        assert isinstance(cfg.algebra, AlgebraConfig)
        assert isinstance(cfg.reports, ReportsConfig)


# ------------------------------------------------------------------
# load_config
# ------------------------------------------------------------------

class TestLoadConfig:
    def test_load_from_file(self, tmp_path):
        path = tmp_path / "cfg.yaml"
        path.write_text(
            textwrap.dedent(
                """\
                app:
                  log_level: DEBUG
                algebra:
                  field: prime
                  modulus: 7
                paths:
                  max_len: 6
                """
            ),
            encoding="utf-8",
        )
        cfg = load_config(path)
        assert cfg.app.log_level == "DEBUG"
        assert cfg.algebra.field == "prime"
        assert cfg.algebra.modulus == 7
        assert cfg.paths.max_len == 6
        assert cfg.reports.json_indent == 2

    def test_missing_file_gives_defaults(self, tmp_path):
        cfg = load_config(tmp_path / "absent.yaml")
        assert cfg == Config()

    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_config(path) == Config()

    def test_unknown_key_raises(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("paths:\n  max_length: 3\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="Invalid configuration"):
            load_config(path)

    def test_malformed_yaml_raises(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("reports: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="Cannot read"):
            load_config(path)

    def test_non_mapping_raises(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- app\n- paths\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="Expected a mapping"):
            load_config(path)

    def test_load_config_real_example_yaml(self):
        """Verify the bundled example.yaml parses and validates."""
        cfg = load_config()
        assert isinstance(cfg, Config)
        assert cfg.app.name


# ------------------------------------------------------------------
# validate_config
# ------------------------------------------------------------------

class TestValidateConfig:
    def test_accepts_fake_config(self, fake_config):
        validate_config(fake_config)

    def test_prime_field_needs_prime_modulus(self):
        cfg = Config(algebra=AlgebraConfig(field="prime", modulus=9))
        with pytest.raises(ConfigError, match="prime modulus"):
            validate_config(cfg)

    def test_prime_field_without_modulus(self):
        cfg = Config(algebra=AlgebraConfig(field="prime"))
        with pytest.raises(ConfigError):
            validate_config(cfg)

    def test_unknown_field(self):
        with pytest.raises(ConfigError, match="Unknown field"):
            validate_config(Config(algebra=AlgebraConfig(field="real")))

    def test_unknown_log_level(self):
        with pytest.raises(ConfigError, match="log level"):
            validate_config(Config(app=AppConfig(log_level="LOUD")))

    @pytest.mark.parametrize(
        "section",
        [
            PathsConfig(max_len=0),
            PathsConfig(probe_depth=0),
            PathsConfig(kernel_horizon=-1),
        ],
    )
    def test_path_bounds(self, section):
        with pytest.raises(ConfigError):
            validate_config(Config(paths=section))

    def test_witness_limit(self):
        with pytest.raises(ConfigError):
            validate_config(Config(reports=ReportsConfig(witness_limit=0)))
