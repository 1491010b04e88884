"""Tests for the command-line interface."""
import json

import pytest
from typer.testing import CliRunner

from cycleconf.app.domain.conformality import is_conformal
from cycleconf.app.domain.families import complete_bipartite, petersen, square_braces_graph
from cycleconf.app.domain.graph import Cycle, Graph
from cycleconf.app.domain.graph_io import from_graph6, to_graph6
from cycleconf.app.main import app, run
from cycleconf.seed import seed_fixtures


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def k33_file(tmp_path):
    path = tmp_path / "k33.g6"
    path.write_text(to_graph6(complete_bipartite(3, 3)) + "\n")
    return path


class TestGen:
    def test_family(self, runner):
        result = runner.invoke(app, ["gen", "k", "3", "3"])
        assert result.exit_code == 0
        assert from_graph6(result.stdout.strip()) == complete_bipartite(3, 3)

    def test_unknown_family(self, runner):
        result = runner.invoke(app, ["gen", "nope"])
        assert result.exit_code == 2
        assert "unknown family" in result.stderr

    def test_kuske_random_trace(self, runner):
        result = runner.invoke(app, ["gen", "kuske-random", "3", "--seed", "5", "--json"])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["verdict"] is True
        assert len(report["evidence"]["trace"]) <= 3

    def test_edge_list_format(self, runner):
        result = runner.invoke(app, ["gen", "cycle", "4", "--format", "edges"])
        assert result.stdout == "4 4\n0 1\n0 3\n1 2\n2 3\n"


class TestCheck:
    def test_generated_graph_is_cycle_conformal(self, runner):
        graph6 = runner.invoke(app, ["gen", "k", "3", "3"]).stdout
        result = runner.invoke(app, ["check", "cycle-conformal"], input=graph6)
        assert result.exit_code == 0

    def test_witness_reverifies(self, runner):
        g = petersen()
        result = runner.invoke(app, ["check", "cycle-conformal", "--witness", "--json"], input=to_graph6(g))
        assert result.exit_code == 1
        report = json.loads(result.stdout)
        assert report["verdict"] is False
        cycle = Cycle.of(report["witness"])
        assert g.is_cycle(cycle)
        assert not is_conformal(g, cycle)

    def test_reduced_method(self, runner, k33_file):
        result = runner.invoke(app, ["check", "cycle-conformal", "--method", "reduced", "-i", str(k33_file), "--json"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["evidence"]["method"] == "reduced"

    def test_malformed_input(self, runner):
        result = runner.invoke(app, ["check", "cycle-conformal"], input="C!\n")
        assert result.exit_code == 2
        assert "position 1" in result.stderr

    def test_malformed_input_json(self, runner):
        result = runner.invoke(app, ["check", "cycle-conformal", "--json"], input="C!\n")
        assert result.exit_code == 2
        report = json.loads(result.stdout)
        assert report["verdict"] == "error"
        assert report["evidence"]["position"] == 1

    def test_empty_input(self, runner):
        result = runner.invoke(app, ["check", "matching-covered"], input="")
        assert result.exit_code == 2

    def test_matching_covered_witness(self, runner):
        result = runner.invoke(app, ["check", "matching-covered", "--in-format", "edges", "--witness", "--json"], input="4 3\n0 1\n1 2\n2 3\n")
        assert result.exit_code == 1
        report = json.loads(result.stdout)
        assert report["reason"] == "edge in no perfect matching"
        assert report["witness"] == [1, 2]

    def test_tight_shore(self, runner):
        square_braces = square_braces_graph()
        result = runner.invoke(app, ["check", "tight", "--shore", "0,1,4", "--json"], input=to_graph6(square_braces.graph))
        assert result.exit_code == 0
        assert json.loads(result.stdout)["evidence"]["trivial"] is False

    def test_loose_shore_witness(self, runner, k33_file):
        result = runner.invoke(app, ["check", "tight", "--shore", "0,1,3", "--witness", "--json", "-i", str(k33_file)])
        assert result.exit_code == 1
        assert len(json.loads(result.stdout)["witness"]) == 3

    def test_pfaffian(self, runner, k33_file):
        result = runner.invoke(app, ["check", "pfaffian", "-i", str(k33_file), "--json"])
        assert result.exit_code == 1
        assert json.loads(result.stdout)["evidence"]["classes_searched"] == 16

    def test_planar_kuratowski(self, runner, k33_file):
        result = runner.invoke(app, ["check", "planar", "-i", str(k33_file), "--json"])
        assert result.exit_code == 1
        assert json.loads(result.stdout)["evidence"]["kuratowski"] == "K33"

    def test_brace(self, runner, k33_file):
        result = runner.invoke(app, ["check", "brace", "-i", str(k33_file)])
        assert result.exit_code == 0
        assert "brace" in result.stdout

    def test_cc_dispatch(self, runner, k33_file):
        result = runner.invoke(app, ["check", "cc", "-i", str(k33_file), "--json"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["evidence"]["method"] == "cubic"

    def test_cc_disconnected_cubic(self, runner):
        k33 = complete_bipartite(3, 3)
        two = Graph.from_edges(12, k33.edges() + [(u + 6, v + 6) for u, v in k33.edges()])
        result = runner.invoke(app, ["check", "cc", "--json"], input=to_graph6(two) + "\n")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["evidence"]["method"] == "brute"

    def test_k_extendable(self, runner, k33_file):
        result = runner.invoke(app, ["check", "k-extendable", "2", "-i", str(k33_file)])
        assert result.exit_code == 0

    def test_bad_method(self, runner, k33_file):
        result = runner.invoke(app, ["check", "cycle-conformal", "--method", "nope", "-i", str(k33_file)])
        assert result.exit_code == 2


class TestDecompose:
    def test_glued_kll(self, runner):
        graph6 = runner.invoke(app, ["gen", "glued-kll", "4"]).stdout
        result = runner.invoke(app, ["decompose", "--json"], input=graph6)
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert [(leaf["kind"], leaf["n"], leaf["m"]) for leaf in report["leaves"]] == [("brace", 8, 16)] * 2
        assert len(report["trace"]["children"]) == 2

    def test_text_output(self, runner, k33_file):
        result = runner.invoke(app, ["decompose", "-i", str(k33_file)])
        assert result.exit_code == 0
        assert "brace" in result.stdout

    def test_not_matching_covered(self, runner):
        result = runner.invoke(app, ["decompose", "--in-format", "edges"], input="4 3\n0 1\n1 2\n2 3\n")
        assert result.exit_code == 2
        assert "precondition" in result.stderr


class TestConvert:
    @pytest.mark.parametrize("fmt", ["edges", "dot", "graph6"])
    def test_roundtrip(self, runner, k33_file, fmt):
        converted = runner.invoke(app, ["convert", "--to", fmt, "-i", str(k33_file)])
        assert converted.exit_code == 0
        back = runner.invoke(app, ["convert", "--to", "graph6"], input=converted.stdout)
        assert from_graph6(back.stdout.strip()) == complete_bipartite(3, 3)

    def test_bad_format(self, runner, k33_file):
        result = runner.invoke(app, ["convert", "--to", "svg", "-i", str(k33_file)])
        assert result.exit_code == 2


class TestCensusAndCount:
    def test_census(self, runner):
        result = runner.invoke(app, ["census", "--n", "6", "--json"])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert len(report["cycle_conformal_braces"]) == 2
        assert report["counterexamples"] == []

    def test_census_report_file(self, runner, tmp_path):
        path = tmp_path / "census.json"
        result = runner.invoke(app, ["census", "--n", "4", "--report", str(path)])
        assert result.exit_code == 0
        assert json.loads(path.read_text())["class_counts"]["braces"] == 1

    def test_census_out_of_bounds(self, runner):
        result = runner.invoke(app, ["census", "--n", "40"])
        assert result.exit_code == 2
        assert "out of bounds" in result.stderr

    def test_census_from_source(self, runner, tmp_path):
        path = tmp_path / "fixtures.g6"
        seed_fixtures(path)
        result = runner.invoke(app, ["census", "--n", "10", "--regular", "3", "--from", str(path), "--json"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["counterexamples"] == []

    def test_validate(self, runner):
        result = runner.invoke(app, ["census", "--n", "6", "--validate", "--bipartite", "--json"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["class_counts"]["mismatches"] == 0

    @pytest.mark.parametrize("method", ["dp", "permanent", "pfaffian"])
    def test_count_methods(self, runner, method):
        result = runner.invoke(app, ["count", "pm", "--method", method, "--json"], input=to_graph6(square_braces_graph().graph))
        assert result.exit_code == 0
        assert json.loads(result.stdout)["evidence"]["perfect_matchings"] == 6

    def test_count_none(self, runner):
        result = runner.invoke(app, ["count", "pm", "--in-format", "edges"], input="3 2\n0 1\n1 2\n")
        assert result.exit_code == 1


class TestRun:
    def test_true_and_false(self, tmp_path, k33_file):
        assert run(["check", "cycle-conformal", "-i", str(k33_file)]) == 0
        path = tmp_path / "petersen.g6"
        path.write_text(to_graph6(petersen()))
        assert run(["check", "cycle-conformal", "-i", str(path)]) == 1

    def test_input_error(self, tmp_path):
        path = tmp_path / "bad.g6"
        path.write_text("C!\n")
        assert run(["check", "cycle-conformal", "-i", str(path)]) == 2

    def test_usage_error(self):
        assert run(["check", "no-such-check"]) == 2


class TestSeed:
    def test_writes_corpus(self, tmp_path):
        path = tmp_path / "fixtures.g6"
        assert seed_fixtures(path) == 21
        assert len(path.read_text().splitlines()) == 21
        assert path.with_suffix(".names").read_text().splitlines()[0] == "C4"
