import csv
import json
from fractions import Fraction

import pytest

from gnpforest.errors import ParameterError
from gnpforest.graph import Graph, read_graph
from gnpforest.harness.cli import main
from gnpforest.harness.experiment import (ConcentrationReport, ExperimentConfig, derive_seed, emit_plot_data,
                                          report_to_csv, report_to_json, run_concentration, write_report)
from gnpforest.harness.verify import run_verify
from gnpforest.moments import window
from gnpforest.solver import max_induced_forest_bruteforce
from gnpforest.graph import GnpParams, sample_gnp


def config(**kw):
    base = dict(n=14, p=Fraction(1, 2), eps=Fraction(3, 10), samples=12, master_seed=99)
    base.update(kw)
    return ExperimentConfig(**base)


def test_derive_seed_is_stable_and_distinct():
    seeds = [derive_seed(5, i) for i in range(1000)]
    assert len(set(seeds)) == 1000
    assert all(0 <= s < 1 << 64 for s in seeds)
    assert derive_seed(5, 3) == derive_seed(5, 3) != derive_seed(6, 3)


@pytest.mark.parametrize("kw", [dict(samples=0), dict(eps=0), dict(eps=Fraction(-1, 10)), dict(p=1),
                                dict(master_seed=-1), dict(output_format="xml"), dict(parallelism=0)])
def test_config_validation(kw):
    with pytest.raises(ParameterError):
        config(**kw)


def test_report_invariants_and_oracle():
    report = run_concentration(config())
    assert report.completed + report.incomplete == 12
    assert report.hit_rate * report.completed == report.hits
    assert sum(report.histogram.values()) == report.completed
    for r in report.records:
        g = sample_gnp(GnpParams(14, Fraction(1, 2), r.seed))
        assert r.F == max_induced_forest_bruteforce(g)
        assert r.in_window == report.window.contains(r.F)


def test_parallel_matches_serial():
    serial = run_concentration(config(samples=8))
    parallel = run_concentration(config(samples=8, parallelism=3))
    assert report_to_csv(serial) == report_to_csv(parallel)
    assert report_to_json(serial) == report_to_json(parallel)


def test_reports_are_byte_identical(tmp_path):
    a = run_concentration(config(samples=1, output_path=tmp_path / "a.json", output_format="json"))
    run_concentration(config(samples=1, output_path=tmp_path / "b.json", output_format="json"))
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    data = json.loads((tmp_path / "a.json").read_text())
    assert data["schema"] == 1
    assert data["config"]["p"] == "1/2" and data["config"]["eps"] == "3/10"
    assert data["aggregate"]["completed"] == a.completed


def test_incomplete_samples_are_not_counted():
    report = run_concentration(config(n=90, samples=3, solver_budget=1))
    assert report.completed == 0 and report.incomplete == 3
    assert report.hit_rate is None and report.hits == 0
    assert report.status == "warning"
    assert all(r.in_window is None for r in report.records)
    assert report.histogram == {}


def test_csv_format(tmp_path):
    report = run_concentration(config(samples=3))
    path = write_report(report, tmp_path / "r.csv", "csv")
    raw = path.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(raw.decode().splitlines()))
    assert [int(r["index"]) for r in rows] == [0, 1, 2]
    assert {r["status"] for r in rows} == {"optimal"}


def test_plot_data(tmp_path):
    report = run_concentration(config(samples=20))
    w = report.window
    path = emit_plot_data(report, tmp_path / "h.csv")
    rows = list(csv.DictReader(path.read_text().splitlines()))
    assert sum(int(r["count"]) for r in rows) == report.completed
    for r in rows:
        assert (int(r["k_minus"]), int(r["k_plus"])) == (w.k_minus, w.k_plus)
        assert (r["is_in_window"] == "true") == w.contains(int(r["F_value"]))


def test_plot_data_empty_report(tmp_path):
    report = ConcentrationReport(config(), window(14, Fraction(1, 2), Fraction(3, 10)), [])
    path = emit_plot_data(report, tmp_path / "h.csv")
    assert path.read_text() == "F_value,count,is_in_window,k_minus,k_plus\n"


def test_unreachable_output_path(tmp_path):
    with pytest.raises(OSError):
        run_concentration(config(samples=1, output_path=tmp_path / "missing" / "r.csv"))


def test_plot_rendering(tmp_path):
    from gnpforest.harness.plotting import plot_concentration, plot_expectation_curve
    report = run_concentration(config(samples=5))
    assert plot_concentration(report, tmp_path / "h.png").read_bytes()[:4] == b"\x89PNG"
    assert plot_expectation_curve(30, 0.5, tmp_path / "e.png").stat().st_size > 0
    empty = ConcentrationReport(config(), report.window, [])
    assert plot_concentration(empty, tmp_path / "empty.png").exists()


@pytest.mark.parametrize("suite, max_n", [("codec", 6), ("counting", 5), ("moments", 4), ("solver", 10)])
def test_verify_suites(suite, max_n):
    report = run_verify(suite, max_n)
    assert report.passed
    assert all(line.startswith("PASS") for line in report.lines())


def test_verify_unknown_suite():
    with pytest.raises(ParameterError):
        run_verify("everything", 3)


# -- command line ---------------------------------------------------------------

def test_cli_sample_and_solve(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["sample", "--n", "9", "--p", "1/2", "--seed", "3", "--out", str(out)]) == 0
    g = read_graph(out)
    assert main(["solve", "--in", str(out)]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["F"] == max_induced_forest_bruteforce(g) and result["status"] == "optimal"
    assert main(["solve", "--n", "9", "--p", "0.5", "--seed", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["F"] == result["F"]


def test_cli_window_and_moments(capsys):
    assert main(["window", "--n", "1024", "--p", "1/2", "--eps", "0.1"]) == 0
    w = json.loads(capsys.readouterr().out)
    assert (w["k_minus"], w["k_plus"], w["eps"]) == (23, 25, "1/10")
    assert main(["moments", "--n", "4", "--k", "2", "--p", "1/2", "--exact", "--second-moment"]) == 0
    m = json.loads(capsys.readouterr().out)
    assert m["mean"] == "9" and m["mean_float"] == 9.0
    assert Fraction(m["second_moment"]) == Fraction(165, 2)


def test_cli_concentration_writes_figures(tmp_path, capsys):
    out = tmp_path / "run.csv"
    argv = ["concentration", "--n", "12", "--p", "1/2", "--eps", "0.3", "--samples", "6", "--seed", "1",
            "--out", str(out)]
    assert main(argv) == 0
    assert "hit_rate=" in capsys.readouterr().err
    assert (tmp_path / "run.hist.csv").exists() and (tmp_path / "run.hist.png").exists()
    first = out.read_bytes()
    assert main(argv + ["--jobs", "2"]) == 0
    assert out.read_bytes() == first


def test_cli_verify_exit_codes(capsys):
    assert main(["verify", "--suite", "counting", "--max-n", "4"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["verify", "--suite", "counting", "--max-n", "20"]) == 2


def test_cli_verify_failure_exit_code(monkeypatch):
    import gnpforest.harness.verify as verify
    from gnpforest.harness.verify import Check

    def broken(max_n):
        c = Check("always", cases=1)
        c.fail("forced")
        return [c]

    monkeypatch.setitem(verify.SUITES, "codec", broken)
    assert main(["verify", "--suite", "codec"]) == 1


def test_cli_codec_roundtrip(tmp_path, capsys):
    tree = Graph.from_edges(5, [(0, 2), (1, 2), (2, 3), (3, 4)])
    (tmp_path / "t.txt").write_text(tree.to_text())
    assert main(["codec", "encode", "--m", "2", "--in", str(tmp_path / "t.txt")]) == 0
    code = json.loads(capsys.readouterr().out)
    assert len(code["a"]) == 1 and len(code["b"]) == 2
    a = ",".join(map(str, code["a"]))
    b = ",".join(map(str, code["b"]))
    assert main(["codec", "decode", "--m", "2", "--n", "5", "--a", a, "--b", b]) == 0
    assert Graph.from_text(capsys.readouterr().out) == tree


@pytest.mark.parametrize("argv", [
    ["window", "--n", "10", "--p", "abc", "--eps", "0.1"],
    ["window", "--n", "10", "--p", "3/2", "--eps", "0.1"],
    ["sample", "--n", "5", "--p", "1/2", "--seed", "-4"],
    ["solve"],
    ["solve", "--in", "/nonexistent/graph.txt"],
    ["codec", "encode", "--m", "1"],
    ["codec", "decode", "--m", "1", "--n", "3", "--a", "", "--b", "9"],
    ["concentration", "--n", "5", "--p", "1/2", "--eps", "0.3", "--samples", "0", "--seed", "1"],
    ["verify", "--suite", "nope"],
])
def test_cli_usage_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2
