import json
import subprocess
import sys

from hopfkit.cli import main
from hopfkit.double import quasi_to_json
from hopfkit.triangular import super_vector_example


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_make_group_cyclic(tmp_path, capsys):
    code, out, _ = run(["make", "group", "--cyclic", "2", "--out", str(tmp_path)], capsys)
    assert code == 0
    data = json.loads((tmp_path / "C2.json").read_text())
    assert data["dim"] == 2


def test_make_double_s3(tmp_path, capsys):
    code, _, _ = run(["make", "double", "--group", "S3", "--out", str(tmp_path)], capsys)
    assert code == 0
    data = json.loads((tmp_path / "D_S3.json").read_text())
    assert data["dim"] == 36 and data["r_matrix"]


def test_make_dual_and_twist(tmp_path, capsys):
    assert run(["make", "dual", "--group", "S3", "--out", str(tmp_path)], capsys)[0] == 0
    code, _, _ = run(["make", "twist", "--group", "C2xC2", "--bicharacter", "a1b2",
                      "--out", str(tmp_path)], capsys)
    assert code == 0
    assert (tmp_path / "twist_C2xC2_a1b2.json").exists()
    j = tmp_path / "twist_C2xC2_a1b2_J.json"
    code, out, _ = run(["verify", str(j), "--suite", "all"], capsys)
    assert code == 0, out
    assert json.loads(out)["status"] == "pass"


def test_make_bad_spec(capsys):
    assert run(["make", "group", "--group", "X9"], capsys)[0] == 2


def test_analyze_c2_double(tmp_path, capsys):
    code, _, _ = run(["analyze", "--group", "C2", "--double", "--out", str(tmp_path)], capsys)
    assert code == 0
    a = json.loads((tmp_path / "analysis.json").read_text())
    assert a["dims"] == [1, 1, 1, 1]
    assert all(abs(abs(v) - 1) < 1e-9 for row in a["s_matrix"] for v in row)
    assert (tmp_path / "fusion_verlinde.csv").exists()


def test_analyze_s3_double_and_k(tmp_path, capsys):
    assert run(["analyze", "--group", "S3", "--double", "--out", str(tmp_path / "s3")], capsys)[0] == 0
    assert len(json.loads((tmp_path / "s3" / "analysis.json").read_text())["dims"]) == 8
    assert run(["analyze", "--group", "C1", "--out", str(tmp_path / "k")], capsys)[0] == 0
    a = json.loads((tmp_path / "k" / "analysis.json").read_text())
    assert a["dims"] == [1] and a["s_matrix"] == [[1.0]]


def test_verify_divisibility_q8(capsys):
    code, out, _ = run(["verify", "--group", "Q8", "--double", "--suite", "divisibility",
                        "--format", "csv"], capsys)
    assert code == 0
    assert "divisibility,pass" in out


def test_verify_triangular_super_vector_file(tmp_path, capsys):
    f = tmp_path / "kz2.json"
    f.write_text(json.dumps(quasi_to_json(super_vector_example())))
    code, out, _ = run(["verify", str(f), "--suite", "triangular"], capsys)
    assert code == 0
    report = json.loads(out)
    assert {c["name"] for c in report["checks"]} >= {"triangularity", "u-involution", "parity-twist"}


def test_verify_corrupted_file_exits_1(tmp_path, capsys):
    main(["make", "group", "--cyclic", "3", "--out", str(tmp_path)])
    capsys.readouterr()
    f = tmp_path / "C3.json"
    data = json.loads(f.read_text())
    data["comult"][0][3] = "3/1"
    f.write_text(json.dumps(data))
    assert run(["verify", str(f)], capsys)[0] == 1


def test_usage_errors_exit_2(tmp_path, capsys):
    assert run(["verify", "--group", "S3", "--int-tol", "0"], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(["verify", str(bad)], capsys)
    assert code == 2 and "line" in err
    assert run(["verify"], capsys)[0] == 2


def test_report_written_to_out(tmp_path, capsys):
    code, _, _ = run(["verify", "--group", "C2", "--double", "--format", "md",
                      "--out", str(tmp_path)], capsys)
    assert code == 0
    assert (tmp_path / "report.md").read_text().startswith("# Verification report")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopfkit", "verify", "--group", "C2", "--double"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == 1
