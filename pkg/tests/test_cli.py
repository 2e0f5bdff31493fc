import json
import subprocess
import sys

import pytest

from diffuni.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--no-timestamp")
    return code, json.loads(out)


def test_delta_inverse_aes(capsys):
    code, r = run_json(capsys, "delta", "--func", "x^254", "--m", "8")
    assert code == 0 and r["delta"] == 4
    assert r["config"]["func"] == "x^254"


def test_delta_x3(capsys):
    code, r = run_json(capsys, "delta", "--func", "x^3", "--m", "6", "--mode", "exhaustive")
    assert code == 0 and r["delta"] == 2 and r["mode"] == "exhaustive"


def test_delta_x7_m7(capsys):
    code, r = run_json(capsys, "delta", "--func", "x^7", "--m", "7")
    assert r["delta"] >= 6 and r["mode"] == "monomial-fast"


def test_delta_sampled_reproducible(capsys):
    args = ("delta", "--func", "x^7+0x3*x^5", "--m", "12", "--mode", "sampled",
            "--alpha-budget", "20", "--seed", "9", "--no-timestamp")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    assert json.loads(a)["exact"] is False


def test_timestamp_present_by_default(capsys):
    _, out, _ = run(capsys, "predict", "--d", "7", "--m", "7")
    assert "timestamp" in json.loads(out)


def test_csv_dump(capsys):
    code, out, _ = run(capsys, "delta", "--func", "x^3", "--m", "3", "--format", "csv")
    rows = out.strip().splitlines()
    assert code == 0 and len(rows) == 9
    assert rows[0].startswith("alpha,0x0,0x1")
    assert rows[1] == "0x0,8,0,0,0,0,0,0,0"


def test_parse_error(capsys):
    code, out, err = run(capsys, "delta", "--func", "x^3 + ?", "--m", "4")
    assert code == 2 and "error" in err and out == ""


def test_reducible_modulus(capsys):
    code, _, err = run(capsys, "delta", "--func", "x^3", "--m", "4", "--mod", "0x15")
    assert code == 2 and "0x" in err


def test_resource_limit(capsys):
    code, _, err = run(capsys, "geom", "--func", "x^3", "--m", "12")
    assert code == 3 and "resource" in err


def test_missing_function(capsys):
    code, _, _ = run(capsys, "delta", "--m", "4")
    assert code == 2


def test_geom(capsys):
    code, r = run_json(capsys, "geom", "--func", "x^3", "--m", "4")
    assert code == 0 and r["contained"] is True and r["violation"] is None
    code, r = run_json(capsys, "geom", "--func", "x^7", "--m", "7")
    assert r["contained"] is False and len(r["violation"]) == 4


def test_geom_cross_check(capsys):
    code, r = run_json(capsys, "geom", "--func", "x^254", "--m", "8", "--cross-check")
    assert code == 0 and r["contained"] is True and r["agree"] is True


def test_geom_count(capsys):
    code, r = run_json(capsys, "geom", "--func", "x^7+x^3", "--m", "3", "--count")
    assert r["x_point_count"] == 145


def test_curve(capsys):
    code, r = run_json(capsys, "curve", "--d", "7", "--m", "8")
    assert code == 0 and r["count"] == 350 and r["weil_interval"] == [161, 353]
    assert all(r["structural_checks"].values())
    _, r = run_json(capsys, "curve", "--d", "15", "--m", "6")
    assert all(r["structural_checks"].values())
    _, r = run_json(capsys, "curve", "--d", "7", "--m", "4")
    assert r["count"] == 14


def test_curve_power_of_two(capsys):
    code, _, _ = run(capsys, "curve", "--d", "8", "--m", "4")
    assert code == 2


def test_predict(capsys):
    _, r = run_json(capsys, "predict", "--d", "7", "--m", "7")
    assert r["predicted_delta_gt_4_monomial"] is True
    _, r = run_json(capsys, "predict", "--d", "8", "--m", "10")
    assert r["hypotheses_met"] is False and "unmet" in r["note"]
    _, r = run_json(capsys, "predict", "--d", "7", "--m", "22")
    assert r["closed_forms"]["polynomial_stated_claim"] is True
    assert r["predicted_delta_gt_4_polynomial"] is False


def test_pf(capsys):
    code, out, _ = run(capsys, "pf", "--func", "x^5", "--m", "4")
    assert code == 0 and len(out.strip().splitlines()) == 6


def test_table_input(capsys, tmp_path):
    from diffuni.gf2m import GF2m
    F = GF2m(4)
    p = tmp_path / "t.txt"
    p.write_text("\n".join(f"{F.pow(x, 7):#x}" for x in range(16)) + "\n")
    _, r = run_json(capsys, "delta", "--table", str(p), "--m", "4")
    assert r["function"] == "x^7"


def test_text_format(capsys):
    _, out, _ = run(capsys, "predict", "--d", "7", "--m", "7", "--format", "text", "--no-timestamp")
    assert "genus: 3" in out.splitlines()


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "equivalence", "--m", "4")
    assert code == 0 and "equivalence: 1/1 ok" in out
    code, a, _ = run(capsys, "verify", "--suite", "invariances", "--seed", "42", "--m", "3")
    _, b, _ = run(capsys, "verify", "--suite", "invariances", "--seed", "42", "--m", "3")
    assert code == 0 and a == b


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2 and "borne1" in err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "diffuni", "predict", "--d", "7", "--m", "7", "--no-timestamp"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["genus"] == 3
