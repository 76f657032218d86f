"""Tests for check execution, sampling, suite runs and reports."""

import json

import pytest

from preproj.engine import InstanceContext, build_algebra
from preproj.errors import CharacteristicUnsupported, ConfigError, FormulaMismatchError
from preproj.verify import (
    CheckResult,
    CheckStatus,
    VerificationReport,
    parse_sample,
    run_suites,
    verify_annihilators,
    verify_homological,
    verify_theorem_a,
    verify_theorem_b,
)
from preproj.verify.suite import Check, execute, expand_suites, select_elements


def _raise(exc):
    def run():
        raise exc
    return run


# ─── Execution Tests ──────────────────────────────────────────


class TestExecute:
    def test_pass_keeps_data(self):
        result = execute(Check("c", "holds", lambda: {"dims": (1, 2)}))
        assert result.status is CheckStatus.PASS
        assert result.witness == {"dims": [1, 2]}

    def test_failure_has_witness(self):
        result = execute(Check("c", "holds", _raise(FormulaMismatchError("broken", w="s1", vertex=2))))
        assert result.status is CheckStatus.FAIL
        assert result.witness["error"] == "FormulaMismatchError"
        assert result.witness["w"] == "s1"
        assert result.witness["vertex"] == 2

    def test_unsupported_is_skipped(self):
        result = execute(Check("c", "holds", _raise(CharacteristicUnsupported("too small", characteristic=3))))
        assert result.status is CheckStatus.SKIPPED
        assert result.reason == "too small"

    def test_crash_is_failure(self):
        result = execute(Check("c", "holds", _raise(ZeroDivisionError("boom"))))
        assert result.status is CheckStatus.FAIL
        assert result.witness == {"error": "ZeroDivisionError", "message": "boom"}


# ─── Sampling Tests ───────────────────────────────────────────


class TestSampling:
    def test_parse(self):
        assert parse_sample("7:3") == (7, 3)
        assert parse_sample(None) is None

    @pytest.mark.parametrize("text", ["7", "a:b", "1:2:3", "5:0"])
    def test_parse_rejects(self, text):
        with pytest.raises(ConfigError):
            parse_sample(text)

    def test_select_is_deterministic(self, b2):
        first = select_elements(b2, (11, 3))
        assert first == select_elements(b2, (11, 3))
        assert len(first) == 3
        W = b2.group
        assert [W.index(w) for w in first] == sorted(W.index(w) for w in first)

    def test_large_sample_takes_everything(self, b2):
        assert select_elements(b2, (0, 100)) == list(b2.group)

    def test_expand_suites(self):
        assert expand_suites(["all"]) == ["theorem-a", "theorem-b", "homological", "annihilators"]
        assert expand_suites(["annihilators", "theorem-a", "annihilators"]) == ["annihilators", "theorem-a"]
        with pytest.raises(ConfigError):
            expand_suites(["theorem-z"])


# ─── Report Tests ─────────────────────────────────────────────


class TestReport:
    def _report(self):
        return VerificationReport(
            {"name": "X"},
            [
                CheckResult("b", "second", CheckStatus.FAIL, {"w": "s1"}, wall_time=0.25),
                CheckResult("a", "first", CheckStatus.PASS, wall_time=0.5),
                CheckResult("c", "third", CheckStatus.SKIPPED, reason="char"),
            ],
        )

    def test_counts_and_exit_code(self):
        report = self._report()
        assert report.counts() == {"pass": 1, "fail": 1, "skipped": 1}
        assert not report.ok
        assert report.exit_code == 1

    def test_empty_report_passes(self):
        assert VerificationReport({}).exit_code == 0

    def test_json_sorted_by_name(self):
        data = json.loads(self._report().to_json())
        assert [c["name"] for c in data["checks"]] == ["a", "b", "c"]
        assert data["checks"][1]["witness"] == {"w": "s1"}
        assert data["checks"][2]["reason"] == "char"

    def test_timing_can_be_left_out(self):
        data = json.loads(self._report().to_json(include_timing=False))
        assert all("wall_time" not in c for c in data["checks"])

    def test_save(self, tmp_path):
        path = self._report().save(tmp_path / "out" / "report.json", include_timing=False)
        assert path.exists()
        assert json.loads(path.read_text())["summary"]["fail"] == 1


# ─── Suite Run Tests ──────────────────────────────────────────


class TestRunSuites:
    def test_a1_all_suites(self, a1):
        report = run_suites(a1, ["all"], jobs=2)
        assert report.ok, [c.to_dict() for c in report.failures]
        assert report.counts()["pass"] == len(report.checks)

    def test_b2_locally_free(self, b2):
        report = verify_theorem_a(b2, jobs=2)
        assert report.ok, [c.to_dict() for c in report.failures]
        names = {c.name for c in report.checks}
        assert "ideal-locally-free[w=s1]" in names
        assert "rigid-locally-free" in names

    def test_b2_annihilators(self, b2):
        report = verify_annihilators(b2, jobs=2)
        assert report.ok, [c.to_dict() for c in report.failures]

    def test_a2_tilting_statements(self, a2):
        report = verify_theorem_b(a2, jobs=2)
        assert report.ok, [c.to_dict() for c in report.failures]
        assert report.checks

    def test_a1_homological(self, a1):
        report = verify_homological(a1, jobs=2)
        assert report.ok, [c.to_dict() for c in report.failures]

    def test_report_independent_of_jobs(self, a2):
        one = run_suites(a2, ["theorem-a"], jobs=1).to_json(include_timing=False)
        many = run_suites(a2, ["theorem-a"], jobs=4).to_json(include_timing=False)
        assert one == many

    def test_sampled_run(self, b2):
        report = run_suites(b2, ["annihilators"], jobs=2, sample=(3, 2))
        per_element = [c for c in report.checks if c.name.startswith("annihilator[")]
        assert len(per_element) == 2


# ─── Desk Sweep Tests ─────────────────────────────────────────


class TestDeskSweep:
    @pytest.mark.parametrize("name", ["A1", "A1c2", "A1c3", "A2", "A2x2", "B2", "B2x2", "G2", "A3"])
    def test_locally_free_everywhere(self, open_instance, name):
        report = verify_theorem_a(open_instance(name), jobs=2)
        assert report.ok, [c.to_dict() for c in report.failures]
        assert "defining-relations" in {c.name for c in report.checks}

    def test_b2_tilting_statements(self, b2):
        report = verify_theorem_b(b2, jobs=2)
        assert report.ok, [c.to_dict() for c in report.failures]
        assert "sttilt-pair[w=s1s2]" in {c.name for c in report.checks}

    def test_b2_homological(self, b2):
        report = verify_homological(b2, jobs=2)
        assert report.ok, [c.to_dict() for c in report.failures]


class TestFlippedSign:
    def test_suite_fails_on_corrupted_algebra(self, b2):
        corrupted = build_algebra(b2.presentation.flip_sign("P3(1)"), b2.field)
        ctx = InstanceContext(
            b2.config, b2.cartan, b2.kind, b2.presentation, b2.field, b2.settings, algebra=corrupted,
        )
        report = verify_theorem_a(ctx, jobs=2)
        assert not report.ok
        failed = {c.name: c for c in report.failures}
        assert failed["defining-relations"].witness["relation"] == "P3(1)"
