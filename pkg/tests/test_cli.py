import json

import pytest

from tsurf.cli import main, parse_choice, UsageError


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


@pytest.fixture
def sol(tmp_path):
    def write(values, name="sol.json"):
        path = tmp_path / name
        path.write_text(json.dumps(values))
        return str(path)
    return write


def test_verify_zero(capsys, sol):
    status, out, _ = run(capsys, "verify", "m004", sol([0] * 6))
    doc = json.loads(out)
    assert status == 0
    assert doc["admissible"] is True and doc["matching"] is True
    assert doc["schema_version"] == "1"


def test_verify_failure_exits_1(capsys, sol):
    status, out, _ = run(capsys, "verify", "m004", sol([1, 0, 0, 0, 0, 0]))
    assert status == 1 and json.loads(out)["matching"] is False


def test_choice_out_of_range(capsys, sol):
    status, _, err = run(capsys, "build", "m004", sol([0, 0, 2, 1, 0, 0]), "--choice", "e0:5")
    assert status == 2
    assert "choice index out of range" in err
    assert len(err.strip().splitlines()) == 1


def test_usage_errors(capsys, sol):
    assert run(capsys, "build")[0] == 2
    assert run(capsys, "frobnicate", "m004")[0] == 2
    status, _, err = run(capsys, "build", "m004", sol([0, 0, 2, 1, 0, 0]), "--choice", "zz")
    assert status == 2 and "malformed choice" in err


def test_invalid_inputs_exit_1(capsys, tmp_path, sol):
    bad = tmp_path / "bad.json"
    bad.write_text('{"tets": 1, "gluings": [[null, null, null, null]]}')
    status, _, err = run(capsys, "check", str(bad))
    assert status == 1 and "unglued face" in err
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "build", "m004", sol([1, 1, 0, 0, 0, 0]))[0] == 1
    assert run(capsys, "build", "m004", sol(["1/2", 0, 1, "1/2", 0, 0]))[0] == 1


def test_all_choices_product(capsys, sol):
    # m009 vertex solution with 2 x 1 matchings
    x = [0, 1, 0, 0, 0, 2, 0, 1, 0]
    status, out, _ = run(capsys, "edges", "m009", sol(x))
    counts = [e["matching_count"] for e in json.loads(out)["edges"]]
    status, out, _ = run(capsys, "build", "m009", sol(x), "--all-choices")
    reports = json.loads(out)["reports"]
    expected = 1
    for c in counts:
        expected *= max(c, 1)
    assert status == 0 and len(reports) == expected
    keys = [tuple(sorted(r["choice"].items())) for r in reports]
    assert keys == sorted(keys)


def test_build_and_plan_reports(capsys, sol, tmp_path):
    x = sol([0, 0, 2, 1, 0, 0])
    status, out, _ = run(capsys, "build", "m004", x, "--svg", str(tmp_path / "svg"))
    doc = json.loads(out)
    report = doc["reports"][0]
    assert status == 0 and report["chi"] == -1 and report["two_sided"] == [False]
    assert {c["case"] for c in report["curves"]} == {1, 3}
    svgs = sorted((tmp_path / "svg").glob("*.svg"))
    assert len(svgs) == 1 and svgs[0].read_text().startswith("<svg")
    status, out, _ = run(capsys, "build", "m004", x, "--double")
    assert json.loads(out)["reports"][0]["two_sided"] == [True]
    status, out, _ = run(capsys, "plan", "m004", x)
    plan = json.loads(out)["plans"][0]
    assert status == 0 and plan["balanced"] is True
    assert {m["kind"] for m in plan["moves"]} == {"CapCase1", "Unwind"}


def test_other_commands(capsys, tmp_path):
    status, out, _ = run(capsys, "check", "m004")
    assert status == 0 and json.loads(out)["cusps"][0]["triangles"] == 8
    status, out, _ = run(capsys, "qmatrix", "m004")
    assert json.loads(out)["rows"] == [[-1, 2, -1, 2, -1, -1], [1, -2, 1, -2, 1, 1]]
    target = tmp_path / "v.json"
    status, out, _ = run(capsys, "enumerate", "m004", "-o", str(target))
    assert out == "" and len(json.loads(target.read_text())["vertices"]) == 4


def test_round_trip_schema(capsys, sol):
    x = sol([0, 1, 0, 0, 0, 2, 0, 1, 0])
    for argv in (("check", "m009"), ("qmatrix", "m009"), ("enumerate", "m009"),
                 ("verify", "m009", x), ("edges", "m009", x), ("build", "m009", x),
                 ("plan", "m009", x)):
        _, out, _ = run(capsys, *argv)
        doc = json.loads(out)
        assert doc["schema_version"] == "1"
        assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == out


def test_parse_choice():
    assert parse_choice("e0:1,2:0") == {0: 1, 2: 0}
    with pytest.raises(UsageError):
        parse_choice("e0")
