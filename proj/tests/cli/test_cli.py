import json

import pytest


def only_strings(node):
    if isinstance(node, dict):
        return all(only_strings(v) for k, v in node.items() if k != "summary")
    if isinstance(node, list):
        return all(only_strings(v) for v in node)
    return isinstance(node, (str, bool)) or node is None


def test_ruled_products(cli):
    code, out = cli.json("product", "--fixture", cli.fixture("ruled_k1"), "--a", "T-", "--b", "T-")
    assert code == 0
    assert out["product"]["value"] == "-pt + 1@e^{-F}"
    code, out = cli.json("product", "--fixture", cli.fixture("ruled_k1"), "--a", "pt", "--b", "T-")
    assert out["product"]["value"] == "F@e^{-F}"


@pytest.mark.parametrize("name, delta", [("ruled_k1", "7/12"), ("ruled_k2", "5/9"), ("ruled_k1_2", "11/18")])
def test_rho_and_section(cli, name, delta):
    code, out = cli.json("rho", "--fixture", cli.fixture(name))
    assert code == 0
    assert out["rho"]["value"] == f"T-@e^{{({delta})F}}"
    assert out["section"] == f"S- + ({delta})F"
    assert out["rho"]["terms"] == [{"exponent": [delta, "0"], "coefficients": {"T-": "1"}}]


@pytest.mark.parametrize("name, iu", [("ruled_k1", "(-2/3)T-"), ("ruled_k2", "(-4/9)T-"), ("ruled_k1_2", "(-8/9)T-")])
def test_invariants(cli, name, iu):
    code, out = cli.json("invariants", "--fixture", cli.fixture(name))
    assert code == 0
    assert out["Ic"] == "1" and out["N"] == "2"
    assert out["Iu"] == iu


def test_psi_at_reference_section(cli):
    code, out = cli.json("psi", "--fixture", cli.fixture("ruled_k1"), "--a", "1", "--sigma", "0")
    assert code == 0
    assert out["psi"]["value"] == "T-"


def test_rotation_rho(cli):
    code, out = cli.json("rho", "--fixture", cli.fixture("s2_rotation"))
    assert code == 0
    assert out["rho"]["value"] == "pt@e^{(1/2)A}"


def test_split_modes(cli):
    code, out = cli.json("split", "--fixture", cli.fixture("t2xs2"))
    assert code == 0 and out["splits"] is True
    code, out = cli.json("split", "--fixture", cli.fixture("ruled_k1"))
    assert code == 1
    assert out["splits"] is False


def test_nonsqueeze(cli):
    code, out = cli.json("nonsqueeze", "--fixture", cli.fixture("s2xs2"), "--kappa", "2")
    assert code == 0 and out["bound"] == "2"
    proc = cli.run("nonsqueeze", "--fixture", cli.fixture("ruled_k1"), "--kappa", "2")
    assert proc.returncode == 3


def test_compose_with_itself(cli):
    code, out = cli.json("compose", "--fixture", cli.fixture("ruled_k1"), "--with", cli.fixture("ruled_k1"))
    assert code == 0
    assert out["rho"]["value"] == "-pt@e^{(7/6)F} + 1@e^{(1/6)F}"


@pytest.mark.parametrize("name", ["s2", "t2", "s2s2", "ruled_k1", "s2_rotation", "s2xs2", "t2xs2"])
def test_verify_all_passes(cli, name):
    code, out = cli.json("verify", "--fixture", cli.fixture(name), "--suite", "all", "--cutoff", "6")
    assert code == 0
    assert all(c["status"] != "fail" for c in out["checks"])


def test_verify_reports_tampered_table(cli, tmp_path):
    doc = json.loads(open(cli.fixture("s2s2")).read())
    for entry in doc["gw"]["three_point"]:
        if entry["args"] == ["ptxpt", "ptxpt", "ptxpt"]:
            entry["value"] = "2"
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    code, out = cli.json("verify", "--fixture", str(path), "--suite", "assoc", "--cutoff", "6")
    assert code == 1
    assert any(c["status"] == "fail" for c in out["checks"])


def test_product_bundle_matches_shipped(cli, tmp_path):
    out = tmp_path / "bundle.json"
    proc = cli.run("product-bundle", "--fixture", cli.fixture("s2"), "--out", str(out))
    assert proc.returncode == 0
    assert out.read_text() == open(cli.fixture("s2xs2")).read()


@pytest.mark.parametrize(
    "args",
    [
        ("product", "--a", "T-", "--b", "T-"),
        ("rho",),
        ("invariants",),
        ("split",),
        ("verify", "--suite", "all"),
        ("psi", "--a", "F"),
    ],
)
def test_json_is_exact_and_deterministic(cli, args):
    full = (args[0], "--fixture", cli.fixture("ruled_k2"), *args[1:], "--json")
    first = cli.run(*full)
    second = cli.run(*full)
    assert first.stdout == second.stdout
    assert only_strings(json.loads(first.stdout))


def test_cutoff_environment(cli):
    _, default = cli.json("rho", "--fixture", cli.fixture("s2_rotation"))
    assert default["cutoff"] == "4"
    _, env = cli.json("rho", "--fixture", cli.fixture("s2_rotation"), env={"QHFIB_CUTOFF": "9/2"})
    assert env["cutoff"] == "9/2"
    _, flag = cli.json("rho", "--fixture", cli.fixture("s2_rotation"), "--cutoff", "3", env={"QHFIB_CUTOFF": "9/2"})
    assert flag["cutoff"] == "3"


@pytest.mark.parametrize(
    "args",
    [
        ("product", "--fixture", "/nonexistent.json", "--a", "1", "--b", "1"),
        ("product", "--a", "1", "--b", "1"),
        ("verify", "--fixture", "{s2}", "--suite", "nonsense"),
        ("product", "--fixture", "{s2}", "--a", "Q", "--b", "1"),
        ("rho", "--fixture", "{rot}", "--cutoff", "-1"),
        ("rho", "--fixture", "{rot}", "--cutoff", "x/y"),
        ("frobnicate",),
    ],
)
def test_input_errors_exit_2(cli, args):
    full = [a.format(s2=cli.fixture("s2"), rot=cli.fixture("s2_rotation")) for a in args]
    proc = cli.run(*full)
    assert proc.returncode == 2, proc.stderr


def test_malformed_fixture_exit_2(cli, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ \"manifold\": ")
    proc = cli.run("rho", "--fixture", str(path))
    assert proc.returncode == 2
    assert "malformed JSON" in proc.stderr
