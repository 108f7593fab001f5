import json

from superyangian.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cartan_plain(capsys):
    code, out = run(capsys, "cartan", "--diagram", "EEO")
    assert code == 0
    assert out.split("\n")[0].split() == ["2", "-1"]


def test_cartan_json(capsys):
    code, out = run(capsys, "cartan", "--diagram", "EEO", "--format", "json")
    assert json.loads(out)["cartan"] == [[2, -1], [-1, 0]]


def test_diagram_distinguished(capsys):
    code, out = run(capsys, "diagram", "--distinguished", "2", "1")
    assert code == 0 and out.startswith("EEO")


def test_roots(capsys):
    code, out = run(capsys, "roots", "--diagram", "EO")
    assert code == 0 and "positive roots" in out


def test_series(capsys):
    code, out = run(capsys, "series", "G", "--order", "6")
    assert code == 0
    assert out.strip() == "-1/24 v^2 + 1/2880 v^4 - 1/181440 v^6"


def test_check_ge_exit_codes(capsys):
    code, out = run(capsys, "check", "ge", "--a", "1", "--order", "6")
    assert code == 0 and out.strip() == "pass"
    code, out = run(capsys, "check", "ge", "--a", "1", "--parity", "-1")
    assert code == 1 and out.startswith("refused")


def test_verify_exit_zero_on_pass(capsys):
    code, out = run(capsys, "verify", "--suite", "casimir", "--diagram", "OEEO",
                    "--cap", "2", "--len", "3")
    assert code == 0
    assert "passed: True" in out


def test_verify_skip_renders(capsys):
    code, out = run(capsys, "verify", "--suite", "hopf", "--diagram", "EOE",
                    "--cap", "2", "--len", "3")
    assert code == 0
    assert "[skip]" in out and "constraint" in out


def test_classify(capsys):
    code, out = run(capsys, "classify", "--np", "2", "--nm", "1")
    assert code == 0
    assert json.loads(out) == [["EEO", "OEE"], ["EOE"]]


def test_distinguish(capsys):
    code, out = run(capsys, "distinguish", "EEO", "EOE")
    assert code == 0 and out.startswith("distinct")


def test_yangian_alias_delta(capsys):
    code, out = run(capsys, "yangian", "delta", "--diagram", "EEO",
                    "--gen", "h:1:0", "--cap", "2")
    assert code == 0
    assert out.strip() == "1 (x) h[1,0] + h[1,0] (x) 1"


def test_phi(capsys):
    code, out = run(capsys, "phi", "--diagram", "EEO", "--gen", "H:1:0",
                    "--cap", "2")
    assert code == 0 and out.strip() == "h[1,0]"


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("SY_DIAGRAM", "EEO")
    monkeypatch.setenv("SY_FORMAT", "json")
    # parser reads the environment at construction time
    code, out = run(capsys, "cartan")
    assert json.loads(out)["diagram"] == "EEO"


def test_weyl_command(capsys):
    code, out = run(capsys, "weyl", "--np", "2", "--nm", "1")
    assert code == 0 and "group order 2" in out
