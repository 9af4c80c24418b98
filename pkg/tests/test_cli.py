import json
import subprocess
import sys

import pytest

from rhoset.cli import main, parse_range
from rhoset.constructor import Certificate


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    return dict(line.split("\t", 1) for line in text.strip().splitlines())


def test_parse_range():
    assert parse_range("1:4") == [1, 2, 3, 4]
    assert parse_range("-2:1") == [-2, -1, 0, 1]
    assert parse_range("3") == [3]
    assert parse_range("1,5,-7") == [1, 5, -7]
    assert parse_range("-3") == [-3]


def test_construct_table_row(capsys):
    code, out, _ = run(capsys, "construct", "--a1", "1", "--n", "4")
    assert code == 0
    d = kv(out)
    assert d["m"] == "5" and d["x0"] == "1" and d["x1"] == "3"


def test_construct_json_roundtrip(capsys):
    code, out, _ = run(capsys, "construct", "--a1", "-1", "--n", "5", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == 1 and d["path"]["tag"] == "Reversed"
    assert isinstance(d["m"], str) and all(isinstance(r, str) for r in d["residues"])
    cert = Certificate.from_dict(d)
    assert cert.recheck() and cert.rho == 5
    assert cert.to_dict() == d


@pytest.mark.parametrize(
    "argv, code",
    [
        (["construct", "--a1", "1", "--n", "3", "--nonzero"], 2),
        (["construct", "--a1", "0", "--n", "3"], 2),
        (["construct", "--a1", "5", "--n", "43", "--budget", "1"], 3),
        (["construct", "--a1", "x", "--n", "3"], 4),
        (["construct", "--a1", "1", "--n", "0"], 4),
        (["construct", "--a1", "1", "--n", "4", "--budget", "0"], 4),
        (["verify", "--a1", "1", "--x0", "0", "--x1", "1", "--m", "0"], 4),
        (["frac", "--a1", "2", "--k", "2", "--eps", "1.5"], 4),
        (["frac", "--a1", "1", "--k", "3"], 4),
        (["sweep", "--a1", "1:0", "--n", "1"], 4),
        (["bogus"], 4),
    ],
)
def test_exit_codes(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:
        got = exc.code
    assert got == code


@pytest.mark.parametrize(
    "args, tau, rho, residues",
    [((2, 1, 1, 5), 12, 4, None), ((1, 0, 1, 3), 8, 3, None), ((5, 0, 0, 7), 1, 1, "0")],
)
def test_verify(capsys, args, tau, rho, residues):
    a1, x0, x1, m = map(str, args)
    code, out, _ = run(capsys, "verify", "--a1", a1, "--x0", x0, "--x1", x1, "--m", m)
    d = kv(out)
    assert code == 0 and int(d["tau"]) == tau and int(d["rho"]) == rho
    if residues is not None:
        assert d["residues"] == residues


def test_lehmer(capsys):
    code, out, _ = run(capsys, "lehmer", "--a1", "2", "--n", "5")
    assert code == 0 and out.strip() == "41"
    code, out, _ = run(capsys, "lehmer", "--a1", "1", "--n", "16", "--json")
    assert json.loads(out)["lehmer"] == "987" and json.loads(out)["cyclotomic"] == "47"


def test_primdiv(capsys):
    code, out, _ = run(capsys, "primdiv", "--a1", "1", "--n", "12")
    d = kv(out)
    assert code == 0 and d["odd"] == "none" and d["guaranteed_odd"] == "False"
    code, out, _ = run(capsys, "primdiv", "--a1", "1", "--n", "16", "--json")
    assert json.loads(out)["high"] == "47^1"
    code, out, _ = run(capsys, "primdiv", "--a1", "5", "--n", "43", "--budget", "1")
    d = kv(out)
    assert d["odd"] == "unknown" and d["high"] == "unknown" and d["complete"] == "False"


def test_order(capsys):
    code, out, _ = run(capsys, "order", "--a1", "1", "--p", "47", "--json")
    d = json.loads(out)
    assert d["kind"] == "inert" and (d["ord_alpha"], d["ord_beta"], d["ord_alpha2"]) == (32, 32, 16)
    code, out, _ = run(capsys, "order", "--a1", "1", "--p", "11")
    d = kv(out)
    assert d["kind"] == "split" and d["ord_alpha2"] == "5"


def test_frac(capsys):
    code, out, _ = run(capsys, "frac", "--a1", "2", "--k", "2", "--N", "200", "--json")
    d = json.loads(out)
    assert code == 0 and d["pass"] and d["predicted"] == ["1/4", "3/4"]


def test_sweep(capsys):
    code, out, err = run(capsys, "sweep", "--a1=-2:2", "--n", "1:8", "--nonzero")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].split("\t") == ["a1", "n", "m", "tau", "rho", "nonzero", "path", "status"]
    rows = [dict(zip(lines[0].split("\t"), ln.split("\t"))) for ln in lines[1:]]
    assert len(rows) == 40
    assert {r["status"] for r in rows} <= {"ok", "expected"}
    assert sum(r["status"] == "expected" for r in rows) == 3 * 2 + 6  # |a1| = 1, n <= 3; a1 = 0, n >= 3
    assert "failures=0" in err


def test_sweep_json_parallel(capsys):
    code, out, _ = run(capsys, "sweep", "--a1", "3", "--n", "1:6", "--jobs", "2", "--format", "json")
    rows = [json.loads(ln) for ln in out.strip().splitlines()]
    assert code == 0 and [r["n"] for r in rows] == list(range(1, 7))
    assert all(r["status"] == "ok" for r in rows)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rhoset", "construct", "--a1", "2", "--n", "12", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["m"] == "13"
