import json
import re
import subprocess
import sys

import pytest

from ballquot.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_pass(capsys):
    code, out, _ = run_cli(capsys, "verify", "--m", "3", "--t", "1,1", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["overall_pass"] is True
    entry = report["results"][0]
    assert entry["observed"] == {"degree": 4, "coeff": "2916/1"}
    assert entry["matched_lemma"]["lhs"] == "108/1"
    assert entry["matched_lemma"]["rhs"] == "60/1"
    assert set(report) == {
        "tool_version", "command", "inputs", "results", "overall_pass", "wall_time_ms",
    }


def test_verify_trivial_group(capsys):
    code, out, _ = run_cli(capsys, "verify", "--m", "1", "--t", "0,0,0")
    assert code == 0
    assert "zero to order" in out


def test_verify_usage_error(capsys):
    code, _, err = run_cli(capsys, "verify", "--m", "4", "--t", "1,2")
    assert code == 2
    assert "not fixed point free" in err


def test_verify_bad_flags(capsys):
    assert run_cli(capsys, "verify", "--m", "3", "--t", "1,x")[0] == 2
    assert run_cli(capsys, "verify", "--m", "3", "--t", "1,1", "--order", "soon")[0] == 2


def test_scan_small(capsys):
    code, out, _ = run_cli(capsys, "scan", "--max-m", "2", "--max-n", "2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert len(report["results"]) == 2
    assert report["case_counts"] == {"I": 1, "trivial": 1}


def test_scan_controls_only(capsys):
    code, out, _ = run_cli(capsys, "scan", "--max-m", "1", "--max-n", "3", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert all(r["case"] == "trivial" for r in report["results"])


def test_scan_jobs_order_independent(capsys):
    code, out1, _ = run_cli(capsys, "scan", "--max-m", "4", "--max-n", "2", "--format", "json")
    assert code == 0
    code, out2, _ = run_cli(
        capsys, "scan", "--max-m", "4", "--max-n", "2", "--jobs", "2", "--format", "json"
    )
    assert code == 0
    a, b = json.loads(out1), json.loads(out2)
    assert a["results"] == b["results"]


def test_json_is_deterministic_except_wall_time(capsys):
    def normalized(argv):
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        return re.sub(r'"wall_time_ms": \d+', '"wall_time_ms": 0', out)

    argv = ["numeric", "--m", "3", "--t", "1,1", "--radius", "0.7",
            "--grid", "8", "--seed", "11", "--format", "json"]
    assert normalized(argv) == normalized(argv)
    argv2 = ["lemmas", "--which", "comb1", "--max", "6", "--format", "json"]
    assert normalized(argv2) == normalized(argv2)


def test_lemmas_comb1_contains_displayed_instance(capsys):
    code, out, _ = run_cli(capsys, "lemmas", "--which", "comb1", "--max", "6", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert {"lemma_id": "comb1", "params": [3, 2, 2, [1, 1]],
            "lhs": "108/1", "rhs": "60/1", "holds": True} in report["results"]


def test_lemmas_lmono_contains_tight_value(capsys):
    code, out, _ = run_cli(capsys, "lemmas", "--which", "lmono", "--max", "8", "--format", "json")
    assert code == 0
    report = json.loads(out)
    tight = [r for r in report["results"] if r["lemma_id"] == "lmono" and r["params"] == [2, 1]]
    assert tight and tight[0]["lhs"] == "81/80"


def test_lemmas_text_notes_finite_range(capsys):
    code, out, _ = run_cli(capsys, "lemmas", "--which", "elementary", "--max", "20")
    assert code == 0
    assert "confidence checks, not proofs" in out
    assert out.strip().endswith("PASS")


def test_lemmas_csv_schema(capsys):
    code, out, _ = run_cli(capsys, "lemmas", "--which", "rearrange", "--max", "4", "--format", "csv")
    assert code == 0
    header = out.splitlines()[0]
    assert header == "lemma_id,params,lhs,rhs,holds"


def test_numeric_writes_samples(tmp_path, capsys):
    out_file = tmp_path / "samples.csv"
    code, out, _ = run_cli(
        capsys, "numeric", "--m", "3", "--t", "1,1", "--radius", "0.8",
        "--grid", "6", "--seed", "7", "--out", str(out_file),
    )
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "z0_re,z0_im,z1_re,z1_im,phi_re,phi_im,J,defect,rel_defect"
    assert len(lines) == 1 + 12  # grid + random points


def test_numeric_outdir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("BALLQUOT_OUTDIR", str(tmp_path))
    code, _, _ = run_cli(
        capsys, "numeric", "--m", "1", "--t", "0,0", "--radius", "0.5",
        "--grid", "4", "--seed", "1", "--out", "flat.json",
    )
    assert code == 0
    data = json.loads((tmp_path / "flat.json").read_text())
    assert len(data) == 8 and {"z", "phi", "J", "defect", "rel_defect"} <= set(data[0])


def test_numeric_trivial_control(capsys):
    code, out, _ = run_cli(
        capsys, "numeric", "--m", "1", "--t", "0,0", "--radius", "0.9",
        "--grid", "25", "--seed", "7", "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["summary"]["max_abs_rel_defect"] <= 1e-9


def test_verify_inconsistent_order_exits_one(capsys):
    # an explicit order below the lowest residual degree is a mathematical
    # inconsistency (the residual looks zero), reported with exit code 1
    code, _, err = run_cli(capsys, "verify", "--m", "5", "--t", "1,2", "--order", "4")
    assert code == 1
    assert "inconsistency" in err


def test_console_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "ballquot.cli", "verify", "--m", "2", "--t", "1,1"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "PASS" in result.stdout
