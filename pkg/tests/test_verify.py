import pytest

from kronq.verify import SUITES, Bounds, UnknownSuite, run_verify


def test_szanto_suite():
    rep = run_verify("szanto", Bounds(max_n=3, primes=(2, 3, 5, 7)))
    assert rep.passed and rep.cases > 0


def test_closed_vs_rec_suite():
    rep = run_verify("closed-vs-rec", Bounds(max_n=10))
    assert rep.passed and rep.cases == 2 * 24


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_verify("unknown-name")


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "positivity"])
def test_each_suite_passes(suite):
    rep = run_verify(suite)
    assert rep.passed, [f.to_json() for f in rep.failures[:3]]


def test_failures_are_serialized(monkeypatch):
    from kronq import verify
    from kronq.cluster import xvar_rec

    def broken(_):
        yield {"m": 3}, (lambda: xvar_rec(3)), (lambda: xvar_rec(4))
        yield {"m": 0}, (lambda: 1 // 0), (lambda: 0)

    monkeypatch.setitem(verify._SUITES, "mutation", broken)
    rep = run_verify("mutation")
    assert rep.cases == 2 and not rep.passed
    first, second = (f.to_json() for f in rep.failures)
    assert first["inputs"] == {"m": 3} and first["lhs"] == xvar_rec(3).to_json()
    assert second["lhs"].startswith("error: ZeroDivisionError")
