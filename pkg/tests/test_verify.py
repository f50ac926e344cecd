"""
Tests for the verification suite runner.
"""

import json

import pytest

from ihull_errors import CapExceededError, ValidationError
from ihull_fixtures import load_fixture
from ihull_logging import EventLog
from ihull_verify import SUITES, Counterexample, Skip, SuiteStatus, run_suites


class TestRunSuites:
    """Tests for run_suites on the built-in fixtures."""

    def test_hypotheses_skip_on_words2(self, words2, settings):
        names = [
            "constructible-right-ideals", "categorical-hull", "maximal-invariance", "hull-closure"
        ]
        results = {r.name: r for r in run_suites(words2, settings, names)}
        assert results["constructible-right-ideals"].status is SuiteStatus.SKIPPED
        assert results["categorical-hull"].status is SuiteStatus.SKIPPED
        assert "categorical at zero" in results["categorical-hull"].detail
        assert results["hull-closure"].status is SuiteStatus.PASSED
        assert results["maximal-invariance"].status is SuiteStatus.PASSED
        assert "forward only" in results["maximal-invariance"].detail

    def test_selection_runs_in_registry_order(self, fixture_a, settings):
        results = run_suites(fixture_a, settings, ["zero-e-unitary", "hull-closure"])
        assert [r.name for r in results] == ["hull-closure", "zero-e-unitary"]

    def test_unknown_suite(self, fixture_a, settings):
        with pytest.raises(ValidationError, match="unknown suite"):
            run_suites(fixture_a, settings, ["no-such-suite"])

    def test_cap_propagates(self, fixture_a, settings):
        with pytest.raises(CapExceededError):
            run_suites(fixture_a, settings.override(max_hull=3), ["hull-closure"])

    def test_language_passes_hull_suites(self, language, settings):
        names = ["representation", "hull-closure", "zero-e-unitary", "language-rees"]
        results = run_suites(language, settings, names)
        assert all(r.status is SuiteStatus.PASSED for r in results)


class TestOutcomes:
    """Tests for how suite outcomes become results."""

    def test_counterexample_is_a_failure(self, fixture_a, settings, mocker):
        def broken(ctx):
            raise Counterexample("θ_a is not a partial bijection")

        mocker.patch.dict(SUITES, {"hull-closure": broken})
        [result] = run_suites(fixture_a, settings, ["hull-closure"])
        assert result.status is SuiteStatus.FAILED
        assert result.detail == "θ_a is not a partial bijection"

    def test_skip_keeps_its_reason(self, fixture_a, settings, mocker):
        def skipped(ctx):
            raise Skip("requires: nothing in particular")

        mocker.patch.dict(SUITES, {"epsilon": skipped})
        [result] = run_suites(fixture_a, settings, ["epsilon"])
        assert result.status is SuiteStatus.SKIPPED
        assert result.detail == "requires: nothing in particular"

    def test_events_are_written(self, fixture_a, settings, tmp_path, mocker):
        path = tmp_path / "events.jsonl"
        log = EventLog(path, "session-1", mocker.Mock())
        run_suites(fixture_a, settings, ["hull-closure", "zero-e-unitary"], event_log=log)
        records = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
        assert [r["kind"] for r in records] == ["suite_passed", "suite_passed"]
        assert [r["suite"] for r in records] == ["hull-closure", "zero-e-unitary"]
        assert all(r["session_id"] == "session-1" for r in records)

    def test_cap_event(self, fixture_a, settings, tmp_path, mocker):
        path = tmp_path / "events.jsonl"
        log = EventLog(path, "session-2", mocker.Mock())
        with pytest.raises(CapExceededError):
            run_suites(fixture_a, settings.override(max_hull=3), ["hull-closure"], event_log=log)
        [record] = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
        assert record["kind"] == "cap_exceeded"
        assert record["limit"] == 3

# every built-in semigroup the suites are meant for; Z2 and NIL are free-product factors
SUITE_FIXTURES = [
    "A", "B", "NO_LCM", "NIL_X", "TRIVIAL", "LANGUAGE", "WORDS2", "MARKOV", "G0_Z2", "CAT2", "PATH",
]
# 0-left cancellative fixtures with least common multiples
LCM_FIXTURES = ["A", "LANGUAGE", "G0_Z2", "PATH"]
LCM_SUITES = ["normal-form-product", "string-characters", "relatively-maximal", "census"]


class TestFixtureCoverage:
    """Every suite on every fixture, with no counterexamples."""

    @pytest.mark.slow
    @pytest.mark.parametrize("name", SUITE_FIXTURES)
    def test_no_suite_fails(self, name, settings):
        results = run_suites(load_fixture(name), settings)
        assert [r.name for r in results] == list(SUITES)
        failed = [(r.name, r.detail) for r in results if r.status is SuiteStatus.FAILED]
        assert failed == []

    @pytest.mark.parametrize("name", LCM_FIXTURES)
    def test_lcm_suites_run(self, name, settings):
        results = run_suites(load_fixture(name), settings, LCM_SUITES)
        assert {r.name: r.status for r in results} == dict.fromkeys(LCM_SUITES, SuiteStatus.PASSED)

    def test_categorical_suites_run_on_path(self, path_uvw, settings):
        names = ["normal-form-product", "normal-form-ambiguity", "categorical-hull"]
        results = run_suites(path_uvw, settings, names)
        assert [r.status for r in results] == [SuiteStatus.PASSED] * 3

    def test_cat2_skips_categorical_suites(self, cat2, settings):
        [result] = run_suites(cat2, settings, ["categorical-hull"])
        assert result.status is SuiteStatus.SKIPPED
        assert "categorical at zero" in result.detail
        assert not cat2.flags.admits_lcms


def test_free_product_suite_on_nilpotent_factor(settings):
    """The free-product suite runs on monoid fixtures."""
    small = settings.override(fp_syllable_bound=2)
    [result] = run_suites(load_fixture("NIL"), small, ["free-product"])
    assert result.status is SuiteStatus.PASSED
