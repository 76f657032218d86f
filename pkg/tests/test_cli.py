"""Tests for the preproj command line."""

import json

import pytest
from click.testing import CliRunner

from preproj import __version__
from preproj.cli import main

EUCLIDEAN_B2 = {"cartan": [[2, -2, 0], [-1, 2, -1], [0, -2, 2]], "symmetrizer": [1, 2, 1]}


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("PREPROJ_CACHE_DIR", str(tmp_path / "cache"))
    return CliRunner()


# ─── Group Tests ──────────────────────────────────────────────


class TestGroup:
    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_bare_invocation_shows_help(self, runner):
        result = runner.invoke(main, [])
        assert result.exit_code == 0
        assert "verify" in result.output

    def test_instances(self, runner):
        result = runner.invoke(main, ["instances"])
        assert result.exit_code == 0
        assert "B2" in result.output
        assert "G2" in result.output


# ─── Inspect and Build Tests ──────────────────────────────────


class TestInspect:
    def test_json(self, runner):
        result = runner.invoke(main, ["inspect", "A1c3", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert "P1(1): ε1^3 = 0" in data["relations"]
        assert data["classification"] == "Dynkin"

    def test_euclidean_file(self, runner, tmp_path):
        path = tmp_path / "affine.json"
        path.write_text(json.dumps(EUCLIDEAN_B2))
        result = runner.invoke(main, ["inspect", str(path)])
        assert result.exit_code == 0

    def test_dot_files(self, runner, tmp_path):
        result = runner.invoke(main, ["inspect", "B2", "--dot", "g.dot", "--quiver", "q.dot"])
        assert result.exit_code == 0
        assert (tmp_path / "g.dot").read_text().startswith("graph")
        assert (tmp_path / "q.dot").read_text().startswith("digraph")

    def test_bad_field(self, runner):
        result = runner.invoke(main, ["inspect", "B2", "--field", "reals"])
        assert result.exit_code == 2

    def test_unknown_instance(self, runner):
        result = runner.invoke(main, ["inspect", "E9"])
        assert result.exit_code == 2


class TestBuild:
    def test_writes_cache(self, runner, tmp_path):
        result = runner.invoke(main, ["build", "A1c3", "--cache", "a1c3.json"])
        assert result.exit_code == 0
        assert json.loads((tmp_path / "a1c3.json").read_text())["dim"] == 3

    def test_oracle(self, runner):
        result = runner.invoke(main, ["build", "A2", "--oracle"])
        assert result.exit_code == 0
        assert "Oracle agrees" in result.output

    def test_refuses_euclidean(self, runner, tmp_path):
        path = tmp_path / "affine.json"
        path.write_text(json.dumps(EUCLIDEAN_B2))
        result = runner.invoke(main, ["build", str(path)])
        assert result.exit_code == 2

    def test_corrupted_cache(self, runner, tmp_path):
        assert runner.invoke(main, ["build", "A2", "--cache", "a2.json"]).exit_code == 0
        path = tmp_path / "a2.json"
        data = json.loads(path.read_text())
        data["dim"] = 5
        path.write_text(json.dumps(data))
        result = runner.invoke(main, ["verify", "A2", "--cache", "a2.json"])
        assert result.exit_code == 2


# ─── Weyl and Lattice Tests ───────────────────────────────────


class TestWeyl:
    def test_json(self, runner):
        result = runner.invoke(main, ["weyl", "B2", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["order"] == 8
        assert data["hasse_edges"] == 8
        assert len(data["meet_irreducibles"]) == 6

    def test_hasse_file(self, runner, tmp_path):
        result = runner.invoke(main, ["weyl", "A2", "--hasse", "hasse.dot"])
        assert result.exit_code == 0
        assert (tmp_path / "hasse.dot").read_text().count("->") == 6


class TestSttilt:
    def test_json(self, runner):
        result = runner.invoke(main, ["sttilt", "B2", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        labels = {n["label"] for n in data["nodes"]}
        assert {"Pi", "I1e1+Pi e2", "Pi e1+I2e2", "0"} <= labels
        assert len(data["edges"]) == 8
        assert set(data["itrigid"]) == {"Pi e2", "Pi e1", "I1e1", "I2e2", "E2", "E1"}

    def test_checked_table(self, runner, tmp_path):
        result = runner.invoke(main, ["sttilt", "A2", "--check", "--dot", "lattice.dot"])
        assert result.exit_code == 0
        assert "Pi" in (tmp_path / "lattice.dot").read_text()


# ─── Verify Tests ─────────────────────────────────────────────


class TestVerify:
    def test_a1_report(self, runner, tmp_path):
        result = runner.invoke(main, ["verify", "A1", "--report", "report.json", "--no-timing"])
        assert result.exit_code == 0
        data = json.loads((tmp_path / "report.json").read_text())
        assert data["summary"]["fail"] == 0
        assert all("wall_time" not in c for c in data["checks"])

    def test_single_suite_json(self, runner):
        result = runner.invoke(main, ["verify", "A2", "-s", "annihilators", "--json", "--no-timing"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["instance"]["name"] == "A2"
        assert all(c["status"] == "pass" for c in data["checks"])

    def test_euclidean_refused(self, runner, tmp_path):
        path = tmp_path / "affine.json"
        path.write_text(json.dumps(EUCLIDEAN_B2))
        result = runner.invoke(main, ["verify", str(path)])
        assert result.exit_code == 2

    def test_bad_sample(self, runner):
        result = runner.invoke(main, ["verify", "A1", "--sample", "x"])
        assert result.exit_code == 2

    def test_unknown_suite(self, runner):
        result = runner.invoke(main, ["verify", "A1", "-s", "nope"])
        assert result.exit_code == 2
