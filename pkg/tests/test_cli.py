import json

import pytest

from qmapwc import CompleteIntersection, InvariantTable, Stability
from qmapwc.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mu(capsys):
    code, out, _ = call(capsys, "mu", "--target", "4:5", "--degree", "1")
    assert code == 0
    assert json.loads(out) == {"z0": ["0", "770"], "z1": ["120", "0"]}


def test_euler(capsys):
    code, out, _ = call(capsys, "euler", "--target", "4:5")
    assert (code, json.loads(out)) == (0, {"chi": "-200"})


@pytest.fixture
def zero_json(tmp_path):
    t = InvariantTable.zeros(CompleteIntersection.parse("4:5"), 2, Stability.infinity(), 1)
    p = tmp_path / "zero.json"
    p.write_text(json.dumps(t.to_json()))
    return p


def test_wallcross(capsys, zero_json):
    code, out, _ = call(capsys, "wallcross", "--target", "4:5", "--genus", "2", "--from", "inf", "--to", "0+",
                        "--input", str(zero_json), "--depth", "1")
    assert code == 0
    assert json.loads(out)["values"] == [{"d": 1, "value": "25/3"}]


def test_output_is_byte_identical(capsys, tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    for p in (first, second):
        assert run(["genus0", "--target", "5:3,3", "--depth", "3", "--output", str(p)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text())["instantons"] == ["1053", "52812", "6424326"]


def test_mirror_map_uses_cache(capsys, tmp_path):
    code, out, _ = call(capsys, "mirror-map", "--target", "4:5", "--depth", "3", "--cache-dir", str(tmp_path))
    assert code == 0 and json.loads(out)["mirror_map"]["coeffs"][:3] == ["0", "1", "770"]
    assert len(list(tmp_path.glob("*.json"))) == 1
    _, again, _ = call(capsys, "mirror-map", "--target", "4:5", "--depth", "2", "--cache-dir", str(tmp_path))
    assert json.loads(again)["mirror_map"]["order"] == 2


def test_jfun_and_ifun(capsys):
    code, out, _ = call(capsys, "jfun", "--target", "4:5", "--epsilon", "1/2", "--depth", "3")
    data = json.loads(out)
    assert code == 0 and data["epsilon"] == "1/2" and sorted(data["plus"]) == ["1", "2"]
    assert data["J1_over_H"]["coeffs"][1] == "770"
    code, out, _ = call(capsys, "ifun", "--target", "3:3", "--degree", "1")
    keys = json.loads(out)
    # degree 1 piece of a cubic surface starts at z^{3 - 4}
    assert code == 0 and max(int(k[1:]) for k in keys) == -1


def test_check_suite(capsys):
    code, out, _ = call(capsys, "check", "--target", "4:5", "--depth", "2")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert {r["check"] for r in data["reports"]} == {"homogeneity", "semipositive", "bcov"}


@pytest.mark.parametrize("argv,code", [
    (["mu", "--target", "4:5", "--degree", "x"], 2),
    (["nosuch"], 2),
    (["mu", "--target", "4:5", "--depth", "-1"], 2),
    (["euler", "--target", "4:x"], 3),
    (["mu", "--target", "4:5"], 3),
    (["genus0", "--target", "4:2"], 3),
    (["jfun", "--target", "4:5", "--epsilon", "0"], 3),
])
def test_error_exit_codes(capsys, argv, code):
    try:
        got = run(argv)
    except SystemExit as exc:
        got = exc.code
    _, err = capsys.readouterr()
    assert got == code
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_depth_error(capsys, zero_json):
    code, _, err = call(capsys, "wallcross", "--genus", "2", "--input", str(zero_json), "--depth", "3")
    assert code == 3 and json.loads(err)["error"] == "DepthError"


def test_mismatched_input(capsys, zero_json):
    code, _, err = call(capsys, "wallcross", "--genus", "1", "--input", str(zero_json))
    assert code == 3


def test_identity_failure_exit_code(capsys, monkeypatch):
    import qmapwc.cli as cli
    from qmapwc.wallcross import CheckReport
    monkeypatch.setattr(cli, "_suite", lambda cfg: [CheckReport("bcov", False, 2)])
    code, out, _ = call(capsys, "check")
    assert code == 4 and json.loads(out)["passed"] is False
