"""Tests for configuration loading and run validation."""

import json

import pytest

from symrigid.config import (
    Command,
    Config,
    CountingConfig,
    NumericConfig,
    OutputFormat,
    RunConfig,
)


class TestConfig:
    def test_defaults(self):
        config = Config()
        assert config.counting.subset_cap == 22
        assert config.numeric.trials == 20
        assert config.numeric.rank_tolerance == 1e-8
        assert config.output.format is OutputFormat.TEXT

    def test_save_and_load(self, tmp_path):
        path = tmp_path / "nested" / "symrigid.json"
        original = Config(
            counting=CountingConfig(subset_cap=18),
            numeric=NumericConfig(trials=4, seed=9, cross_check=False),
        )
        original.save(path)
        assert Config.from_file(path) == original

    def test_partial_file(self, tmp_path):
        path = tmp_path / "partial.json"
        path.write_text(json.dumps({"numeric": {"seed": 3}}), encoding="utf-8")
        config = Config.from_file(path)
        assert config.numeric.seed == 3
        assert config.numeric.trials == 20

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("SYMRIGID_CAP", "10")
        monkeypatch.setenv("SYMRIGID_TRIALS", "6")
        monkeypatch.setenv("SYMRIGID_FORMAT", "JSON")
        config = Config.from_env()
        assert config.counting.subset_cap == 10
        assert config.numeric.trials == 6
        assert config.output.format is OutputFormat.JSON

    def test_environment_overlays_base(self, monkeypatch):
        monkeypatch.setenv("SYMRIGID_SEED", "8")
        base = Config(numeric=NumericConfig(trials=2))
        config = Config.from_env(base)
        assert (config.numeric.trials, config.numeric.seed) == (2, 8)

    @pytest.mark.parametrize("name,value", [("SYMRIGID_CAP", "many"), ("SYMRIGID_FORMAT", "xml")])
    def test_bad_environment(self, monkeypatch, name, value):
        monkeypatch.setenv(name, value)
        with pytest.raises(ValueError, match=name):
            Config.from_env()


class TestRunConfig:
    def test_valid(self):
        RunConfig(Command.ANALYZE, j=3).validate(6)

    def test_j_out_of_range(self):
        with pytest.raises(ValueError, match="j=6"):
            RunConfig(Command.ANALYZE, j=6).validate(6)

    def test_trials(self):
        run = RunConfig(Command.ANALYZE, config=Config(numeric=NumericConfig(trials=0)))
        with pytest.raises(ValueError, match="trials"):
            run.validate()

    def test_steps(self):
        with pytest.raises(ValueError, match="steps"):
            RunConfig(Command.RANDOM, steps=-1).validate(5)
