"""Command-line interface: JSON output, parsing, exit codes, stability."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from grossen.cli import main, parse_element, parse_ideal
from grossen.quadfield import FieldE, QIdeal


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classgroup_output(capsys):
    code, out, err = run(capsys, "classgroup", "-d", "-5460")
    assert code == 0 and err == ""
    obj = json.loads(out)
    assert obj["class_number"] == "16"
    assert obj["elementary_divisors"] == ["2", "2", "2", "2"]
    assert out.endswith("\n")


def test_classgroup_rejects_nonfundamental(capsys):
    code, out, err = run(capsys, "classgroup", "-d", "-5")
    assert code == 2
    assert out == ""
    assert err.strip()


def test_classgroup_rejects_positive(capsys):
    code, _, err = run(capsys, "classgroup", "-d", "5")
    assert code == 2 and err.strip()


def test_argparse_error_is_exit_2(capsys):
    code, _, _ = run(capsys, "classgroup")          # missing -d
    assert code == 2
    code, _, _ = run(capsys, "nonsense")
    assert code == 2


def test_units_output(capsys):
    code, out, _ = run(capsys, "units", "-d", "-15", "-m", "s")
    assert code == 0
    obj = json.loads(out)
    assert int(obj["order"]) == 8
    total = 1
    for f in obj["factors"]:
        total *= int(f["order"])
    assert total == 8


def test_chars_output(capsys):
    code, out, _ = run(capsys, "chars", "-d", "-15", "-m", "s")
    assert code == 0
    obj = json.loads(out)
    assert int(obj["count"]) == len(obj["characters"]) > 0


def test_parse_element_grammar():
    f4 = FieldE(-4)
    i = f4.element(2, 1)                  # i = w + 2 at disc -4
    assert i * i == f4.element(-1)
    assert parse_element(f4, "2(1+i)") == f4.element(2) * (f4.one + i)
    # i exists only at disc -4; w and s everywhere
    f15 = FieldE(-15)
    assert parse_element(f15, "w") == f15.omega
    assert parse_element(f15, "s") == f15.sqrt_disc
    assert parse_element(f15, "3w+1") == f15.omega * 3 + 1
    assert parse_element(f15, "(1+w)(1-w)") == (f15.one + f15.omega) * (
        f15.one - f15.omega)
    with pytest.raises(Exception):
        parse_element(f15, "i")           # no i outside disc -4
    with pytest.raises(Exception):
        parse_element(f15, "2 +")


def test_parse_ideal_hnf_triple():
    f15 = FieldE(-15)
    assert parse_ideal(f15, "3,0") == QIdeal.from_hnf(f15, 3, 0)
    assert parse_ideal(f15, "15,0") == QIdeal.from_element(f15.sqrt_disc) * 1
    assert parse_ideal(f15, "s") == QIdeal.from_element(f15.sqrt_disc)


def test_gross_build_and_eval_roundtrip(tmp_path, capsys):
    rec = tmp_path / "w15.json"
    code, out, _ = run(capsys, "gross", "build", "-d", "-15", "-m", "s",
                       "--order", "2", "-o", str(rec))
    assert code == 0
    stored = json.loads(rec.read_text())
    assert stored["level"] == "225"
    assert stored["rationality"]["degree"] == "2"
    assert stored["rationality"]["disc"] == "5"

    code, out, _ = run(capsys, "gross", "eval", "--record", str(rec),
                       "--ideal", "7")
    assert code == 0
    obj = json.loads(out)
    assert obj["value"] == [["0", "0", ["0"], "-7"]]
    assert float(obj["numeric"]["re"]) == -7.0
    assert float(obj["numeric"]["im"]) == 0.0

    # ramified ideal shares a factor with the modulus: value is zero
    code, out, _ = run(capsys, "gross", "eval", "--record", str(rec),
                       "--ideal", "3,0")
    assert code == 0
    obj = json.loads(out)
    assert obj["value"] == []


def test_gross_build_no_character_is_exit_1(capsys):
    code, out, err = run(capsys, "gross", "build", "-d", "-15", "-m", "s",
                         "--order", "5")
    assert code == 1
    assert out == ""
    assert err.strip()


def test_gross_eval_missing_record_is_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "gross", "eval", "--record",
                       str(tmp_path / "absent.json"), "--ideal", "7")
    assert code == 2 and err.strip()


def test_qexp_known_coefficients(capsys):
    code, out, _ = run(capsys, "qexp", "-d", "-4", "-m", "2(1+i)",
                       "-B", "10")
    assert code == 0
    obj = json.loads(out)
    assert obj["header"]["level"] == "32"
    assert obj["header"]["weight"] == "2"
    assert obj["header"]["value_degree"] == "1"
    coeffs = dict((c[0], c[1]) for c in obj["coeffs"])
    assert coeffs["1"] == [["0", "0", [], "1"]]
    assert coeffs["2"] == []
    assert coeffs["3"] == []
    assert coeffs["5"] == [["0", "0", [], "-2"]]
    assert coeffs["9"] == [["0", "0", [], "-3"]]


def test_table_quadodd_and_byte_stability(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "table", "quadodd", "-o", str(a))[0] == 0
    assert run(capsys, "table", "quadodd", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = json.loads(a.read_text())["rows"]
    assert len(rows) == 11
    got = {int(r["delta_E"]): int(r["delta_K"]) for r in rows}
    assert got[-15] == 5 and got[-403] == 13 and got[-267] == 89


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "grossen", "classgroup", "-d", "-4"],
        capture_output=True, text=True, cwd="/root/pkg")
    assert res.returncode == 0
    assert json.loads(res.stdout)["class_number"] == "1"
