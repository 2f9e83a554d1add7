import csv
import io
import json
import subprocess
import sys

import pytest

from rydjam.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_enumerate_figure_example(capsys):
    code, out, _ = run(["enumerate", "--b", "2", "--length", "16"], capsys)
    assert code == 0
    assert "total=96" in out
    assert "N=4 count=45" in out and "N=5 count=50" in out and "N=6 count=1" in out


@pytest.mark.parametrize("L,total", [(0, 1), (3, 2)])
def test_enumerate_small(capsys, L, total):
    code, out, _ = run(["enumerate", "--b", "1", "--length", str(L)], capsys)
    assert code == 0
    assert f"total={total}" in out


def test_enumerate_cap_needs_genfunc(capsys):
    code, _, err = run(["enumerate", "--b", "1", "--length", "40"], capsys)
    assert code == 2
    assert "--genfunc" in err
    code, out, _ = run(["enumerate", "--b", "1", "--length", "40", "--genfunc", "--format", "csv"], capsys)
    assert code == 0
    assert rows(out)[0].keys() == {"b", "N", "L", "count"}


def test_coeffs(capsys, tmp_path):
    path = tmp_path / "c.csv"
    assert main(["coeffs", "--b", "2", "--length-max", "16", "-o", str(path)]) == 0
    data = rows(path.read_text())
    at16 = {int(r["N"]): int(r["count"]) for r in data if r["L"] == "16"}
    assert at16 == {4: 45, 5: 50, 6: 1}


def test_complexity_grid(capsys):
    code, out, _ = run(["complexity", "--b", "1", "--steps", "5", "--rho-min", "0.35", "--rho-max", "0.5"], capsys)
    assert code == 0
    data = rows(out)
    assert len(data) == 5
    assert float(data[-1]["f"]) == 0.0


def test_complexity_single_points(capsys):
    code, out, _ = run(["complexity", "--b", "1", "--rho", "0.4"], capsys)
    assert abs(float(rows(out)[0]["f"]) - 0.2772589) < 5e-8
    code, out, _ = run(["complexity", "--kmer", "2", "--rho", "0.8"], capsys)
    assert code == 0
    assert abs(float(rows(out)[0]["f"]) - 0.2772589) < 5e-8


def test_complexity_usage_errors(capsys):
    code, _, _ = run(["complexity", "--b", "1", "--steps", "0", "--rho-min", "0.3", "--rho-max", "0.4"], capsys)
    assert code == 2
    code, _, _ = run(["complexity", "--b", "1"], capsys)
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["complexity", "--b", "1", "--kmer", "2", "--rho", "0.4"])
    assert exc.value.code == 2


def test_no_subcommand(capsys):
    assert main([]) == 2


def test_rho_star(capsys):
    code, out, _ = run(["rho-star", "--b-max", "3"], capsys)
    assert code == 0
    data = rows(out)
    assert [r["b"] for r in data] == ["1", "2", "3"]
    assert abs(float(data[0]["rho_star"]) - 0.41149) < 1e-5


def test_compare(capsys):
    code, out, _ = run(["compare", "--b-max", "10"], capsys)
    assert code == 0
    data = rows(out)
    assert abs(float(data[0]["rho_star"]) - 0.41149) < 1e-5
    assert abs(float(data[0]["rho_inf"]) - 0.43233) < 1e-5
    for r in data:
        assert abs(float(r["f_at_star"]) - float(r["ln_w_b"])) <= 1e-9
        assert float(r["b_rho_star"]) < float(r["b_rho_inf"])


def test_compare_kmer_minimum(capsys):
    code, out, _ = run(["compare", "--kmer", "--k-max", "20"], capsys)
    assert code == 0
    data = rows(out)
    best = min(data, key=lambda r: float(r["rho_star"]))
    assert best["k"] == "9"


def test_compare_quadrature_failure_marks_rows(capsys):
    code, out, _ = run(["compare", "--b-max", "2", "--tol", "1e-300"], capsys)
    assert code == 3
    assert "ERROR" in out


def test_jamming_limit_and_renyi(capsys):
    code, out, _ = run(["jamming-limit", "--b", "1"], capsys)
    assert abs(float(rows(out)[0]["rho_inf"]) - 0.432332358381694) < 1e-14
    code, out, _ = run(["jamming-limit", "--kmer", "2"], capsys)
    assert abs(float(rows(out)[0]["rho_inf"]) - 0.864664716763387) < 1e-14
    code, out, _ = run(["renyi"], capsys)
    assert code == 0
    assert abs(float(rows(out)[0]["value"]) - 0.7475979202) < 1e-6


def test_simulate_trivial(capsys):
    code, out, _ = run(["simulate", "--b", "1", "--length", "2", "--trials", "5", "--seed", "7"], capsys)
    assert code == 0
    r = rows(out)[0]
    assert float(r["mean_density"]) == 0.5 and float(r["std_error"]) == 0.0


def test_simulate_deterministic_jsonl(capsys):
    argv = ["simulate", "--b", "1", "--length", "3000", "--trials", "6", "--seed", "11",
            "--per-trial", "--format", "jsonl"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv + ["--workers", "3"], capsys)
    assert first == second
    lines = [json.loads(x) for x in first.splitlines()]
    assert lines[0]["trials"] == 6
    assert [x["trial"] for x in lines[1:]] == list(range(6))


@pytest.mark.slow
def test_simulate_large(capsys):
    code, out, _ = run(["simulate", "--b", "1", "--length", "100000", "--trials", "100", "--seed", "1"], capsys)
    assert code == 0
    assert abs(float(rows(out)[0]["mean_density"]) - 0.43233) < 5e-3


def test_svg_outputs_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    argv = ["complexity", "--b", "2", "--rho-min", "0.2", "--rho-max", "0.3333", "--steps", "60",
            "-o", str(tmp_path / "c.csv")]
    assert main(argv + ["--svg", str(a)]) == 0
    assert main(argv + ["--svg", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.startswith("<?xml") and "SVG 1.1" in text
    assert "xlink:href=\"http" not in text


@pytest.mark.parametrize("figure", ["complexity", "kmer-complexity", "panel", "compare", "compare-scaled"])
def test_plot_figures(tmp_path, figure):
    out = tmp_path / f"{figure}.svg"
    assert main(["plot", figure, "--b-max", "4", "--k-max", "5", "--steps", "40", "-o", str(out)]) == 0
    assert out.read_text().rstrip().endswith("</svg>")


def test_self_check(capsys):
    code, out, _ = run(["--self-check"], capsys)
    assert code == 0
    assert "FAIL" not in out
    assert out.count("PASS") >= 5


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rydjam.cli", "enumerate", "--b", "1", "--length", "3",
                           "--format", "csv"], capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines() == ["b,N,L,count", "1,1,3,1", "1,2,3,1"]
