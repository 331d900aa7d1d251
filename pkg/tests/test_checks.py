import pytest

from thetatrees import checks


def _all_ok(name, params):
    reports = checks.run_check(name, params, dict(checks.DEFAULT_CAPS), 2)
    assert reports
    bad = [(r.parameters, r.lhs, r.rhs, r.note) for r in reports if r.status != "ok"]
    assert not bad


@pytest.mark.parametrize(
    "name,params",
    [
        ("lemma-trees", {"max_size": 4}),
        ("refined", {"max_n": 4}),
        ("symmetric-theta", {"max_size": 4}),
        ("root-split", {"max_n": 4}),
    ],
)
def test_secondary_checks(name, params):
    _all_ok(name, params)


def test_registry_names():
    assert set(checks.check_names()) >= {
        "theta-t1", "hilbert", "tutte-link", "lemma-trees", "conjecture-theta", "refined", "symmetric-theta",
        "macdonald-identity", "syt-rst", "catalan", "delta-split", "hmn", "polyomino", "sandpile", "gessel", "examples",
    }


def test_caps_enforced():
    with pytest.raises(checks.UsageError):
        checks.expand_cells("theta-t1", {"n": 9}, dict(checks.DEFAULT_CAPS))
    with pytest.raises(checks.UsageError):
        checks.expand_cells("nope", {}, dict(checks.DEFAULT_CAPS))


def test_report_json_fields():
    r = checks.run_check("catalan", {"n": 2}, dict(checks.DEFAULT_CAPS), 1)[0]
    assert r.to_json(False)["status"] == "ok"
    assert "elapsed_ms" in r.to_json(True)
