import json

from clusterforms.report import WITNESS_LIMIT, CheckReport


def test_record_and_verdict():
    rep = CheckReport("demo")
    rep.record("fine")
    rep.record("broken", list(range(10)))
    assert rep.failed == ["broken"] and rep.verdict == "fail"
    assert len(rep.witnesses["broken"]) == WITNESS_LIMIT and rep.counts["broken"] == 10


def test_reason_overrides_verdict():
    rep = CheckReport("demo")
    rep.reason = "budget-exhausted"
    assert not rep.ok and rep.verdict == "budget-exhausted"


def test_merge_prefixes_and_conjoins():
    a, b = CheckReport("a"), CheckReport("b")
    a.check("x", True)
    b.check("x", False, "w")
    a.merge(b, "sub:").merge(b)
    assert a.results == {"x": False, "sub:x": False}


def test_json_is_sorted_and_stable():
    rep = CheckReport("demo")
    rep.check("b", True)
    rep.check("a", False, {"z": 1, "y": frozenset({2, 1})})
    text = rep.to_json()
    assert text == rep.to_json()
    doc = json.loads(text)
    assert list(doc["results"]) == ["a", "b"] and doc["schema"] == "report/1"
