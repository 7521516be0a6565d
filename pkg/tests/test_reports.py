import copy
import json

import pytest

from hopfkit.checks import CATALOG, Check
from hopfkit.double import build_double, double_to_json
from hopfkit.groups import make_group
from hopfkit.hopf import group_algebra, hopf_to_json
from hopfkit.reports import InputError, VerificationReport, run_full_suite
from hopfkit.scalars import ToleranceConfig


def test_unregistered_check_name():
    with pytest.raises(ValueError):
        Check("not-a-check", True)


def test_report_status_and_order():
    r = VerificationReport("x", [Check("u-coproduct", True), Check("associativity", False, 1.0)])
    assert r.status == "fail"
    assert [c.name for c in r.checks] == ["associativity", "u-coproduct"]
    d = r.to_dict()
    assert d["schema"] == 1
    assert {c["name"] for c in d["checks"]} <= set(CATALOG)


def test_c2_double_passes():
    r = run_full_suite("cyclic(2)", double=True)
    assert r.passed, r.failures()
    assert r.provenance["seed"] == 0
    assert len(r.provenance["input_sha256"]) == 64


def test_s3_double_dims_in_detail():
    r = run_full_suite("symmetric(3)", double=True)
    assert r.passed
    assert r.check("wedderburn").detail["dims"] == [1, 1, 2, 2, 2, 2, 3, 3]
    assert r.check("double-dims-oracle").passed


def test_corrupted_associativity_named():
    data = hopf_to_json(group_algebra(make_group("C3")))
    data["mult"][4][3] = "2/1"
    r = run_full_suite(data, "hopf")
    assert not r.passed
    assert "associativity" in r.failures()


def test_reports_are_deterministic():
    a = run_full_suite("S3", double=True).to_json()
    b = run_full_suite("S3", double=True).to_json()
    assert a == b
    c = run_full_suite("S3", double=True, tol=ToleranceConfig(rng_seed=5))
    assert json.loads(a)["status"] == c.status


def test_renderings():
    r = run_full_suite("C2", double=True)
    assert r.to_csv().splitlines()[0] == "name,status,residual"
    assert "**PASS**" in r.to_markdown()
    json.loads(r.render("json"))


def test_input_errors():
    with pytest.raises(InputError):
        run_full_suite("Z7")
    with pytest.raises(InputError):
        run_full_suite("C2", "bogus-suite")
    with pytest.raises(InputError) as err:
        run_full_suite({"dim": 2, "mult": "x", "unit": [], "counit": []})
    assert err.value.location == "mult"


def test_suite_on_double_json_matches_group_spec():
    data = double_to_json(build_double(group_algebra(make_group("C3"))))
    r = run_full_suite(copy.deepcopy(data))
    assert r.passed
    assert r.check("double-dims-oracle").passed
    assert r.check("divisibility").passed


def test_group_algebra_suite_skips_modular():
    r = run_full_suite("S3")
    assert r.passed
    assert any("not factorizable" in s for s in r.provenance["skipped"])
    assert r.check("frobenius-type").passed
    assert r.check("u-involution").passed
