"""Tests for the command-line interface and the analyzer behind it."""

import json

import pytest

from symrigid import SymmetryAnalyzer, __version__
from symrigid.cli import (
    COMMANDS,
    EXIT_DISAGREE,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_SPECIAL,
    build_run_config,
    create_parser,
    main,
)
from symrigid.config import Command, Config, NumericConfig, OutputFormat


@pytest.fixture
def loops_file(tmp_path):
    path = tmp_path / "loops.txt"
    text = "group 8\nvertex u free\nedge u u 1\nedge u u 2\nedge u u 3\n"
    path.write_text(text, encoding="utf-8")
    return path


class TestParser:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            create_parser().parse_args(["--version"])
        assert excinfo.value.code == 0
        assert __version__ in capsys.readouterr().out

    def test_command_required(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args([])

    def test_flags_override_environment(self, monkeypatch, tmp_path):
        path = tmp_path / "config.json"
        Config(numeric=NumericConfig(trials=7, seed=2)).save(path)
        monkeypatch.setenv("SYMRIGID_SEED", "5")
        args = create_parser().parse_args(
            ["analyze", "gallery:figure1", "--k", "6", "--config", str(path), "--trials", "3"]
        )
        run_config = build_run_config(args)
        assert run_config.command is Command.ANALYZE
        assert run_config.config.numeric.trials == 3
        assert run_config.config.numeric.seed == 5

    def test_every_command_has_a_handler(self):
        assert set(COMMANDS) == set(Command)

    def test_spec_is_repeatable(self):
        args = create_parser().parse_args(
            ["check", "g.txt", "--spec", "plain:2,3", "--spec", "zkj", "--json"]
        )
        run_config = build_run_config(args)
        assert run_config.specs == ["plain:2,3", "zkj"]
        assert run_config.config.output.format is OutputFormat.JSON


class TestCheck:
    def test_counterexample_is_tight(self, capsys):
        argv = ["check", "gallery:counterexample-loop", "--k", "8", "--spec", "zkj", "--j", "4"]
        status = main(argv)
        assert status == EXIT_OK
        assert capsys.readouterr().out == "zkj:4: tight\n"

    def test_violation_exits_one(self, capsys, loops_file):
        status = main(["check", str(loops_file), "--spec", "zkj:4"])
        assert status == EXIT_DISAGREE
        assert capsys.readouterr().out.splitlines() == [
            "zkj:4: not sparse",
            "  witness: e0 e1 e2 (3 > 2)",
        ]

    def test_default_count(self, capsys, triangle_file):
        assert main(["check", str(triangle_file)]) == EXIT_OK
        assert capsys.readouterr().out == "plain:2,3: tight\n"

    def test_json(self, capsys, triangle_file):
        main(["check", str(triangle_file), "--spec", "gain:0,1", "--json"])
        data = json.loads(capsys.readouterr().out)
        assert data["verdicts"][0] == {
            "spec": "gain:0,1", "sparse": True, "tight": False, "edges": 3, "target": 5,
        }

    def test_zkj_outside_the_middle(self, capsys, triangle_file):
        assert main(["check", str(triangle_file), "--spec", "zkj", "--j", "1"]) == EXIT_INPUT
        assert capsys.readouterr().err.startswith("Input error:")


class TestAnalyze:
    def test_counterexample_disagrees(self, capsys):
        status = main(["analyze", "gallery:counterexample-loop", "--k", "8", "--trials", "5"])
        assert status == EXIT_DISAGREE
        lines = capsys.readouterr().out.splitlines()
        assert lines[4].startswith("j=4 comb=tight ")
        assert lines[4].endswith("agree=false")
        assert lines[-1] == "rigid=false cover_rank=12 needed=13 certified=false"

    def test_agreement(self, capsys):
        status = main(["analyze", "gallery:base-loop-vertex", "--k", "5", "--trials", "3"])
        assert status == EXIT_OK
        out = capsys.readouterr().out
        assert "j=1 comb=tight" in out
        assert " alt=" in out

    def test_numeric_only(self, capsys):
        status = main(
            ["analyze", "gallery:figure1", "--k", "6", "--j", "2", "--trials", "3",
             "--numeric-only"]
        )
        assert status == EXIT_OK
        assert capsys.readouterr().out.startswith("j=2 comb=na ")

    def test_json_report(self, capsys):
        main(["analyze", "gallery:base-loop-vertex", "--k", "5", "--trials", "3", "--json"])
        data = json.loads(capsys.readouterr().out)
        assert [block["j"] for block in data["blocks"]] == [0, 1, 2, 3, 4]
        assert data["certified"] is True


class TestReduce:
    def test_special_case_exit(self, capsys):
        status = main(["reduce", "gallery:special-case", "--k", "6", "--j", "3"])
        assert status == EXIT_SPECIAL
        assert capsys.readouterr().out.splitlines()[-1] == "terminal special-case at=v"

    def test_partner_reduces(self, capsys):
        assert main(["reduce", "gallery:special-partner", "--k", "6", "--j", "3"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "terminal fixed-vertex"

    def test_j_required(self, capsys):
        assert main(["reduce", "gallery:special-partner", "--k", "6"]) == EXIT_INPUT
        assert "--j is required" in capsys.readouterr().err

    def test_outside_regime(self, capsys):
        assert main(["reduce", "gallery:counterexample-loop", "--k", "8", "--j", "4"]) == EXIT_INPUT


class TestOtherCommands:
    def test_gallery_listing(self, capsys):
        assert main(["gallery"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith("counterexample-loop: ")
        assert "special-partner: " in out

    def test_gallery_entry(self, capsys):
        assert main(["gallery", "figure1", "--k", "6"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[:2] == ["group 6", "vertex v0 fixed"]

    def test_gallery_entry_needs_k(self):
        assert main(["gallery", "figure1"]) == EXIT_INPUT

    def test_lift_to_file(self, tmp_path, capsys):
        out = tmp_path / "cover.txt"
        assert main(["lift", "gallery:figure1", "--k", "6", "-o", str(out)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        header = out.read_text(encoding="utf-8").splitlines()[0]
        assert header.startswith("# cover of a Z_6 gain graph: 13 vertices")

    def test_random_is_deterministic(self, capsys):
        argv = ["random", "--k", "5", "--j", "2", "--steps", "2", "--seed", "1", "--trials", "3"]
        assert main(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out == first
        assert first.startswith("group 5\n")


class TestErrors:
    def test_missing_file(self, capsys, tmp_path):
        assert main(["check", str(tmp_path / "absent.txt")]) == EXIT_INPUT
        assert capsys.readouterr().err.startswith("Input error:")

    def test_parse_error_names_the_line(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("group 8\nvertex u free\nedge u u 9\n", encoding="utf-8")
        assert main(["check", str(path)]) == EXIT_INPUT
        assert "line 3: gain out of range" in capsys.readouterr().err

    def test_k_must_match_file(self, triangle_file):
        assert main(["check", str(triangle_file), "--k", "8"]) == EXIT_INPUT

    def test_capacity(self, capsys, triangle_file):
        assert main(["check", str(triangle_file), "--cap", "2"]) == EXIT_INPUT
        assert "cap of 2" in capsys.readouterr().err

    def test_unexpected_failure(self, capsys, monkeypatch, triangle_file):
        def boom(self, source, k=None):
            raise RuntimeError("boom")

        monkeypatch.setattr(SymmetryAnalyzer, "load", boom)
        assert main(["check", str(triangle_file)]) == EXIT_INPUT
        assert capsys.readouterr().err == "Error: boom\n"


class TestAnalyzer:
    def test_zkj_takes_j(self):
        analyzer = SymmetryAnalyzer()
        g = analyzer.load("gallery:counterexample-loop", 8)
        assert analyzer.check(g, ["zkj"], j=4)[0].describe() == "tight"

    def test_block_count_by_default(self):
        analyzer = SymmetryAnalyzer()
        g = analyzer.gallery("base-loop-vertex", 5)
        assert str(analyzer.check(g, j=0)[0].spec) == "gain:0,1"

    def test_random_with_fixed_vertex(self):
        analyzer = SymmetryAnalyzer(Config(numeric=NumericConfig(trials=3, seed=4)))
        growth = analyzer.random("loop-pair", 7, 3, 1, with_fixed=True)
        assert growth.graph.fixed_vertex is not None
        assert len(growth.moves) == 1
