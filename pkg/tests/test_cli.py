import json
import subprocess
import sys

PY = [sys.executable, "-m", "supercalc"]


def run_cli(*args, expect: int = 0):
    proc = subprocess.run(
        PY + list(args), capture_output=True, text=True, timeout=600
    )
    assert proc.returncode == expect, proc.stderr
    return proc


def test_eval_antisymmetry():
    proc = run_cli("eval", "x1^x2 + x2^x1", "--nu", "2")
    assert proc.stdout.strip() == "0"


def test_eval_berezin():
    proc = run_cli("eval", "berezin(x1*x2)", "--nu", "2")
    assert proc.stdout.strip() == "1"


def test_eval_lift_from_file(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"1,2": "1"}))
    proc = run_cli("eval", "lift[exp](s)", "--nu", "2", "--let", f"s={path}")
    assert proc.stdout.strip() == "1 + x1^x2"


def test_eval_form_mode():
    proc = run_cli("eval", "d(x1*dx2)", "--n", "2")
    assert proc.stdout.strip() == "(1)*dx1*dx2"
    proc = run_cli("eval", "i[x1](dx1^dx2)", "--n", "2")
    assert proc.stdout.strip() == "(1)*dx2"


def test_eval_parse_error_exit_code():
    proc = subprocess.run(
        PY + ["eval", "x1 +* x2", "--nu", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 2
    assert "error" in proc.stderr


def test_eval_json_mode():
    proc = run_cli("eval", "inverse(2 + x1^x2)", "--nu", "2", "--json")
    data = json.loads(proc.stdout)
    assert data == {"result": "1/2 - 1/4*x1^x2"}


def test_berezin_command(tmp_path):
    path = tmp_path / "z.json"
    path.write_text(json.dumps({"": "5", "1": "7"}))
    proc = run_cli("berezin", "--nu", "1", "--expr", str(path))
    assert proc.stdout.strip() == "7"
    proc = run_cli(
        "berezin", "--nu", "1", "--expr", str(path), "--normalization", "sqrt2pii"
    )
    assert proc.stdout.strip() == "7 * (2*pi*i)^(1/2)"


def test_mixed_command(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"terms": {"1,2": {"1": "1"}}}))
    proc = run_cli("mixed", "--n", "1", "--nu", "2", "--expr", str(path), "--domain", "0,1")
    assert proc.stdout.strip() == "1/2"


def test_mixed_gaussian(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"terms": {"1,2": "gaussian"}}))
    proc = run_cli(
        "mixed", "--n", "1", "--nu", "2", "--expr", str(path), "--domain=-8,8",
        "--quad", "1e-12",
    )
    value = float(proc.stdout.strip())
    assert abs(value - 1.7724538509055159) < 1e-10


def test_check_subcommands_exit_zero():
    run_cli("check", "grassmann", "--trials", "20", "--seed", "3")
    run_cli("fock", "check", "--nb", "1", "--nf", "1", "--max-occ", "2", "--trials", "5")
    run_cli("clifford", "check", "--dim", "2", "--metric", "identity", "--trials", "2")
    run_cli("complexes", "check", "--n", "1", "--nu", "1", "--trials", "6")


def test_check_json_output():
    proc = run_cli("check", "linalg", "--trials", "10", "--seed", "5", "--json")
    data = json.loads(proc.stdout)
    assert data[0]["suite"] == "linalg"
    assert data[0]["failures"] == 0


def test_unknown_suite_usage_error():
    proc = subprocess.run(
        PY + ["check", "nonsense"], capture_output=True, text=True
    )
    assert proc.returncode == 2


def test_metric_file_for_clifford(tmp_path):
    path = tmp_path / "metric.json"
    path.write_text(json.dumps([["2", "1"], ["1", "3"]]))
    run_cli("clifford", "check", "--dim", "2", "--metric", str(path), "--trials", "1")
