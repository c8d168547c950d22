from fractions import Fraction

import pytest

import qhfib


def test_fiber_ring(fixture_dir):
    f = qhfib.load(str(fixture_dir / "ruled_k1.json"))
    m = f.fiber
    assert m.labels == ["1", "F", "T-", "pt"]
    assert m.minimal_chern == 2
    assert m.product("T-", "T-") == "-pt + 1@e^{-F}"
    assert m.product("pt", "T-", cutoff=Fraction(6)) == "F@e^{-F}"
    assert m.inverse("T-@e^{(7/12)F}") == "F@e^{(5/12)F} + T-@e^{(5/12)F}"
    assert m.inverse("pt") is None


def test_seidel_data(fixture_dir):
    f = qhfib.load(str(fixture_dir / "ruled_k2.json"))
    assert f.section == "S- + (5/9)F"
    assert f.rho() == "T-@e^{(5/9)F}"
    inv = f.invariants()
    assert inv["Ic"] == Fraction(1)
    assert inv["Iu"] == "(-4/9)T-"
    with pytest.raises(qhfib.HypothesisFailed):
        f.splits()
    with pytest.raises(qhfib.TableIncomplete):
        f.nonsqueezing(2)


def test_product_bundle(fixture_dir):
    s2 = qhfib.load(str(fixture_dir / "s2.json"))
    bundle = qhfib.product_bundle(s2)
    assert bundle.is_product
    assert bundle.rho() == "1"
    assert bundle.nonsqueezing("2") == Fraction(2)
    assert bundle.to_json() == (fixture_dir / "s2xs2.json").read_text()
    with pytest.raises(qhfib.HypothesisFailed):
        qhfib.loads(bundle.to_json()).splits()
    torus = qhfib.product_bundle(qhfib.load(str(fixture_dir / "t2.json")))
    assert torus.splits()


def test_reports(fixture_dir):
    rot = qhfib.load(str(fixture_dir / "s2_rotation.json"))
    report = rot.verify("all", 6)
    assert report["suite"] == "all"
    assert all(c["status"] != "fail" for c in report["checks"])
    assert rot.compose_rho(rot) == "1"
    assert "all" in qhfib.suite_names()
    with pytest.raises(qhfib.UnknownSuite):
        rot.verify("nonsense")
    with pytest.raises(qhfib.CutoffTooSmall):
        rot.verify("rho", -1)


def test_input_errors():
    with pytest.raises(qhfib.ParseError):
        qhfib.loads("{")
    with pytest.raises(qhfib.QHFibError):
        qhfib.load("/nonexistent.json")
