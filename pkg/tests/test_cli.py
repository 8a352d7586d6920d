"""Command-line interface: formats, wrappers, exit codes."""

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from coulombstar.cli import main
from coulombstar.specfun import CoulombParams, eval_g


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 1          # a single JSON object per invocation
    return json.loads(lines[0])


def test_radius_json_matches_library(capsys):
    rec = run_json(capsys, "radius", "--family", "f", "--L", "-0.5",
                   "--eta", "0", "--beta", "0")
    assert rec["command"] == "radius"
    assert rec["inputs"]["family"] == "f"
    assert rec["outputs"]["value"] == pytest.approx(0.9407705639497375,
                                                    abs=1e-10)
    assert rec["outputs"]["bracket_lo"] <= rec["outputs"]["value"] <= \
        rec["outputs"]["bracket_hi"]


def test_radius_phi_value(capsys):
    rec = run_json(capsys, "radius", "--family", "phi", "--nu", "1",
                   "--alpha", "0")
    assert rec["outputs"]["value"] == pytest.approx(1.8411837813, abs=1e-9)


def test_eval_bit_identical_to_library(capsys):
    rec = run_json(capsys, "eval", "--family", "g", "--L", "1",
                   "--eta", "-1", "--z-re", "1")
    res = eval_g(CoulombParams(1.0, -1.0), 1.0)
    assert rec["outputs"]["value"] == res.value            # bit-for-bit
    assert rec["outputs"]["derivative"] == res.derivative
    assert rec["diagnostics"]["terms_used"] == res.terms_used


def test_eval_spec_examples(capsys):
    rec = run_json(capsys, "eval", "--family", "F", "--L", "0", "--eta", "0",
                   "--z-re", "1.5707963267948966")
    assert rec["outputs"]["value"] == pytest.approx(1.0, abs=1e-12)
    rec2 = run_json(capsys, "eval", "--family", "besselJ", "--L", "0.5",
                    "--z-re", "3.1415926535")
    assert rec2["outputs"]["value"] == pytest.approx(0.0, abs=1e-9)


def test_eval_complex_flattening(capsys):
    rec = run_json(capsys, "eval", "--family", "F", "--L", "0.5",
                   "--eta", "-0.3", "--z-re", "1.0", "--z-im", "0.5")
    assert "value_re" in rec["outputs"] and "value_im" in rec["outputs"]
    assert "value" not in rec["outputs"]


def test_eval_dini_requires_H(capsys):
    code, _, err = run(capsys, "eval", "--family", "dini", "--L", "0",
                       "--z-re", "1")
    assert code == 2 and "H" in err
    rec = run_json(capsys, "eval", "--family", "dini", "--L", "0",
                   "--z-re", "0.9407705639497375", "--H", "0.5")
    assert rec["outputs"]["value"] == pytest.approx(0.0, abs=1e-12)


def test_csv_output_shape(capsys):
    code, out, _ = run(capsys, "radius", "--family", "g", "--L", "0",
                       "--eta", "0", "--csv")
    assert code == 0
    header, row = csv.reader(io.StringIO(out))
    d = dict(zip(header, row))
    assert d["command"] == "radius"
    assert float(d["outputs.value"]) == pytest.approx(math.pi / 2,
                                                      abs=1e-12)
    assert header.index("inputs.family") < header.index("outputs.value") \
        < header.index("diagnostics.iterations")


def test_rayleigh_exact_strings(capsys):
    rec = run_json(capsys, "rayleigh", "--which", "Z", "--L", "1",
                   "--eta", "0", "--kmax", "2", "--exact")
    assert rec["outputs"]["Z2"] == "1/5"
    rec2 = run_json(capsys, "rayleigh", "--which", "Ztilde", "--L", "0.5",
                    "--eta", "0", "--kmax", "2", "--exact")
    assert rec2["outputs"]["Zt2"] == "7/12"
    rec3 = run_json(capsys, "rayleigh", "--which", "Ztilde", "--L", "1/2",
                    "--eta", "0", "--kmax", "2", "--exact")
    assert rec3["outputs"] == rec2["outputs"]    # 1/2 and 0.5 parse alike


def test_rayleigh_float_mode(capsys):
    rec = run_json(capsys, "rayleigh", "--which", "Z", "--L", "1",
                   "--eta", "0", "--kmax", "2")
    assert rec["outputs"]["Z2"] == pytest.approx(0.2, rel=1e-12)


def test_rayleigh_zeta_strings(capsys):
    rec = run_json(capsys, "rayleigh", "--which", "zeta", "--kmax", "4",
                   "--nmax", "2")
    assert rec["outputs"]["zeta2_2"] == "9/8 + 1/2*eta^2"
    assert rec["outputs"]["zeta2_0"] == "1/2"
    assert rec["outputs"]["zeta4_1"] == "-11/16"


def test_asympt_polynomials_and_value(capsys):
    rec = run_json(capsys, "asympt", "--N", "1")
    assert rec["outputs"]["c"] == "sqrt2"
    assert rec["outputs"]["eps1"] == "eta + 5*sqrt2/4 - 1/4"
    rec2 = run_json(capsys, "asympt", "--N", "1", "--eta", "-1",
                    "--L", "100")
    expect = math.sqrt(2) * 100 - 1 + 5 * math.sqrt(2) / 4 - 0.25
    assert rec2["outputs"]["value"] == pytest.approx(expect, rel=1e-14)


def test_asympt_validate_reports_divergence(capsys):
    rec = run_json(capsys, "asympt", "--N", "0", "--eta", "-1",
                   "--L", "25", "50", "--validate")
    assert rec["outputs"]["slope"] > -0.5        # documented plateau
    assert all(v > 0.1 for k, v in rec["diagnostics"].items()
               if k.startswith("scaled_err"))


def test_figure_csv(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    code, stdout, _ = run(capsys, "figure", "--figure", "2", "--points",
                          "64", "--out", str(out))
    assert code == 0
    rec = json.loads(stdout)
    assert rec["outputs"]["rows"] == 64
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["t", "re", "im"]
    assert len(rows) == 65
    t0 = [float(x) for x in rows[1]]
    assert t0[0] == 0.0
    assert t0[1] == pytest.approx(1.0, abs=1e-12)     # sin(pi/2)
    assert t0[2] == pytest.approx(0.0, abs=1e-15)
    # closed, conjugate-symmetric curve
    first = complex(*[float(x) for x in rows[1][1:]])
    last = complex(*[float(x) for x in rows[-1][1:]])
    second = complex(*[float(x) for x in rows[2][1:]])
    assert abs(last - first) < 2 * abs(second - first)


def test_figure_stdout(capsys):
    code, out, _ = run(capsys, "figure", "--figure", "1", "--points", "8",
                       "--out", "-")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["t", "re", "im"]
    assert float(rows[1][1]) == pytest.approx(0.58814635401704562,
                                              abs=1e-12)


def test_output_file_option(tmp_path, capsys):
    path = tmp_path / "rec.json"
    code, out, _ = run(capsys, "radius", "--family", "g", "--L", "0",
                       "--eta", "0", "--output", str(path))
    assert code == 0 and out == ""
    rec = json.loads(path.read_text())
    assert rec["outputs"]["value"] == pytest.approx(math.pi / 2)


def test_exit_codes(capsys, monkeypatch, tmp_path):
    code, _, err = run(capsys, "radius", "--family", "f", "--L", "-2",
                       "--eta", "0")
    assert code == 2 and "L" in err
    code, _, err = run(capsys, "figure", "--figure", "1", "--points", "64",
                       "--out", str(tmp_path / "no-such-dir" / "x.csv"))
    assert code == 3
    monkeypatch.setenv("COULOMB_MAX_TERMS", "8")
    code, _, err = run(capsys, "eval", "--family", "F", "--L", "0",
                       "--eta", "-1", "--z-re", "40")
    assert code == 4 and "NonConvergence" in err


def test_verify_all_subset(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "1", "2", "10")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == 3
    assert all(l.startswith("PASS") for l in lines)
    assert "3/3 criteria passed" in out
    code2, _, err2 = run(capsys, "verify-all", "--only", "nope")
    assert code2 == 2 and "unknown criterion" in err2


def test_verify_all_honest_failures_exit_nonzero(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "7a", "7b")
    assert code == 4                      # 7a is a documented failure
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert lines[0].startswith("FAIL") and "7a" in lines[0]
    assert lines[1].startswith("PASS") and "7b" in lines[1]


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coulombstar", "rayleigh", "--which", "Z",
         "--L", "1", "--eta", "0", "--kmax", "2", "--exact"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["Z2"] == "1/5"
