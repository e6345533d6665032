"""Tests for the named verification suites behind `verify`."""

import math

import pytest

from hypergeo.suites import SUITES, PropertyResult, SuiteResult, Tolerances, run_suite, run_suites

EXPECTED = {
    "algebra", "octonion", "hermitian", "carnot", "bisector", "cartan",
    "toledo", "isometry", "character", "bending", "realbend",
}


def test_registry():
    assert set(SUITES) == EXPECTED


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_suite_passes_at_small_count(name):
    result = run_suite(name, seed=7, count=30)
    failed = [(p.name, p.value, p.bound) for p in result.properties if not p.passed]
    assert result.properties
    assert not failed
    assert result.elapsed > 0.0


def test_unknown_suite():
    with pytest.raises(KeyError, match="available"):
        run_suite("nope")


def test_run_suites_is_deterministic():
    first = run_suites(["algebra", "cartan"], seed=3, count=20)
    second = run_suites(["algebra", "cartan"], seed=3, count=20)
    assert [r.name for r in first] == ["algebra", "cartan"]
    for a, b in zip(first, second):
        assert [p.value for p in a.properties] == [p.value for p in b.properties]


def test_tight_tolerances_can_fail():
    result = run_suite("hermitian", seed=7, count=30, tolerances=Tolerances(0.0, 0.0, 0.0))
    assert not result.passed


class TestResults:
    def test_property_kinds(self):
        assert PropertyResult("p", 1e-12, 1e-9).passed
        assert not PropertyResult("p", 1e-8, 1e-9).passed
        assert PropertyResult("gap", 0.5, 0.1, kind="min").passed
        assert not PropertyResult("gap", 0.05, 0.1, kind="min").passed
        assert not PropertyResult("p", math.nan, 1.0).passed
        assert not PropertyResult("p", math.inf, 1.0).passed

    def test_empty_checks(self):
        res = SuiteResult("demo", seed=1, count=0)
        res.check_max("nothing to bound", [], 1e-9)
        res.check_min("nothing separated", [], 0.1)
        assert res.properties[0].passed
        assert not res.properties[1].passed
        assert not res.passed

    def test_as_dict(self):
        res = SuiteResult("demo", seed=1, count=2)
        res.check_max("small", [1e-13, 2e-13], 1e-9)
        d = res.as_dict()
        assert d['suite'] == "demo" and d['passed']
        assert d['properties'][0]['samples'] == 2
        assert d['properties'][0]['passed'] is True


def test_bisector_suite_checks_the_converses():
    result = run_suite("bisector", seed=11, count=40)
    props = {p.name: p for p in result.properties}
    for name in ("slices lie on random bisectors", "bisector points project into the spine",
                 "spine projections lie on the complex spine",
                 "right triangles project onto their right-angle vertex"):
        assert props[name].passed and props[name].samples > 0
    assert props["Pythagorean identity for right configurations"].bound == 1e-9


def test_spine_identity_is_checked_without_scaling():
    result = run_suite("cartan", seed=11, count=40)
    props = {p.name: p for p in result.properties}
    absolute = props["tan A equals sinh of the spine distance"]
    assert absolute.passed and absolute.samples > 0
    assert props["tan A equals sinh of the spine distance, scaled by max(1, tan A)"].samples == 40
