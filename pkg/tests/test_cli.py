import csv
import io
import json

import pytest

from lejakit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_gen_disc(capsys):
    code, out, _ = run(capsys, "gen", "disc", "4")
    assert code == 0
    table = rows(out)
    assert table[0] == ["index", "angle_num", "angle_log2den", "re", "im"]
    pts = [complex(float(r[3]), float(r[4])) for r in table[1:]]
    assert pts == [1, -1, 1j, -1j]


def test_gen_interval(capsys):
    code, out, _ = run(capsys, "gen", "interval", "3")
    assert code == 0
    assert [float(r[3]) for r in rows(out)[1:]] == [1.0, -1.0, 0.0]


def test_gen_json(capsys):
    code, out, _ = run(capsys, "gen", "interval", "5", "--format", "json")
    body = json.loads(out)
    assert code == 0 and len(body["rows"]) == 5 and "manifest" in body


def test_seventeen_digits(capsys):
    _, out, _ = run(capsys, "gen", "interval", "4")
    assert rows(out)[4][3] == format(2 ** -0.5, ".17g")


@pytest.mark.parametrize("argv", [
    ["gen", "disc", "0"],
    ["verify", "all", "0"],
    ["lebesgue", "disc", "--kmin", "5", "--kmax", "3"],
    ["gamma", "11"],
    ["figure", "2"],
    ["nonsense"],
    ["gen", "disc", "x"],
    ["lebesgue", "disc", "--kmax", "4", "--grid-mult", "1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_gamma_table(capsys):
    code, out, _ = run(capsys, "gamma", "4")
    table = rows(out)
    assert code == 0
    assert table[0] == ["m", "l", "gamma", "bound", "margin"]
    first, second = table[1], table[2]
    assert first[:2] == ["1", "1"] and float(first[2]) == pytest.approx(1.25, abs=1e-12)
    assert float(first[3]) == 1.25
    assert second[:2] == ["2", "1"] and float(second[2]) == pytest.approx(1.125, abs=1e-12)
    assert float(second[3]) == 1.25
    pairs = {(int(r[0]), int(r[1])) for r in table[1:]}
    assert {(m, 1 << (m - 1)) for m in range(1, 5)} <= pairs
    assert len(pairs) == 1 + 2 + 4 + 8


def test_lebesgue_output_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["lebesgue", "interval", "--kmin", "1", "--kmax", "12", "--out", str(a)]) == 0
    assert main(["lebesgue", "interval", "--kmin", "1", "--kmax", "12", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()
    manifest = json.loads((tmp_path / "a.csv.manifest.json").read_text())
    assert manifest["command"] == "lebesgue"
    assert manifest["parameters"] == {"domain": "interval", "kmin": 1, "kmax": 12}
    assert manifest["seed"] == 0 and "wall_time_s" in manifest and "timings_s" in manifest
    table = rows(a.read_text())
    assert len(table) == 13 and table[0][0] == "domain"


def test_verify_disc_passes(capsys):
    code, out, err = run(capsys, "verify", "disc", "--kmax", "32")
    assert code == 0
    body = json.loads(out)
    assert body["outcome"] == "pass"
    assert {c["id"] for c in body["suites"]["disc"]} >= {"B1", "B8"}


def test_verify_interval_reports_conjecture(capsys, tmp_path):
    out_file = tmp_path / "v.json"
    code, _, err = run(capsys, "verify", "interval", "40", "--out", str(out_file))
    assert code == 0
    body = json.loads(out_file.read_text())
    assert body["conjecture_3k"] == "holds up to 40"
    assert "holds up to 40" in err


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "disc", "8", "--format", "csv")
    assert code == 0
    assert rows(out)[0] == ["suite", "id", "k", "lhs", "rhs", "margin", "status", "severity", "anchor"]


def test_verify_inconclusive_exit_code(capsys):
    # a grid larger than the search budget makes every sup-search inconclusive
    code, _, _ = run(capsys, "verify", "disc", "4", "--grid-mult", str(1 << 23))
    assert code == 3


def test_lebesgue_inconclusive_exit_code(capsys):
    code, out, _ = run(capsys, "lebesgue", "disc", "--kmax", "3", "--grid-mult", str(1 << 23))
    assert code == 3
    assert all(r[-1].startswith("inconclusive") for r in rows(out)[1:])


def test_figure_small(capsys):
    code, out, _ = run(capsys, "figure", "8")
    assert code == 0
    assert len(rows(out)) == 9
