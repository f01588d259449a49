import json
import subprocess
import sys

import numpy as np
import pytest

from instances import complete_graph, cycle_graph, planted_cycle_graph, triangle
from longcycle.cli import main
from longcycle.graph import graph_to_dict, make_graph


@pytest.fixture
def write(tmp_path):
    def _write(name, g, **extra):
        path = tmp_path / name
        path.write_text(json.dumps({**graph_to_dict(g), **extra}))
        return str(path)
    return _write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def without_time(report):
    return {k: v for k, v in report.items() if k != "wall_time_s"}


def test_colourful_triangle(write, capsys, tmp_path):
    path = write("tri.json", triangle())
    code, rep, err = run(["colourful", path, "--k", "3", "--t", "0", "--trials", "64", "--seed", "5",
                          "--plot-dir", str(tmp_path / "figs")], capsys)
    assert code == 0
    assert rep["answer"] == 3
    assert rep["seed"] == 5 and not rep["seed_generated"]
    assert rep["params"] == {"k": 3, "t": 0, "trials": 64, "backend": "grid"}
    assert len(rep["per_trial"]["lengths"]) == 64
    assert set(rep["per_trial"]["lengths"]) <= {3, "inf"}
    assert (tmp_path / "figs" / "trial_lengths.png").stat().st_size > 0
    assert rep["figures"] == [str(tmp_path / "figs" / "trial_lengths.png")]


def test_reports_are_deterministic(write, capsys):
    path = write("k5.json", complete_graph(5))
    argv = ["colourful", path, "--k", "4", "--t", "0", "--trials", "6", "--seed", "11"]
    _, one, _ = run(argv, capsys)
    _, two, _ = run(argv, capsys)
    assert json.dumps(without_time(one)) == json.dumps(without_time(two))
    argv = ["long-cycle", path, "--k", "4", "--seed", "3", "--outer", "2", "--inner", "4"]
    _, one, _ = run(argv, capsys)
    _, two, _ = run(argv, capsys)
    assert json.dumps(without_time(one)) == json.dumps(without_time(two))


def test_missing_seed_is_generated_and_reported(write, capsys):
    path = write("tri.json", triangle())
    code, rep, err = run(["colourful", path, "--k", "3", "--trials", "2"], capsys)
    assert code == 0 and rep["seed_generated"]
    assert str(rep["seed"]) in err


def test_usage_and_io_errors(write, capsys, tmp_path):
    path = write("tri.json", triangle())
    with pytest.raises(SystemExit) as info:
        main(["colourful", path, "--k", "0"])
    assert info.value.code == 2
    code, rep, err = run(["colourful", str(tmp_path / "nope.json"), "--k", "3", "--seed", "1"], capsys)
    assert code == 4 and rep is None and "error" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "edges": [{"u": 2, "v": 2}], "specified": [2, 2]}')
    code, _, err = run(["colourful", str(bad), "--k", "1", "--seed", "1"], capsys)
    assert code == 2 and "loop" in err
    code, _, err = run(["colourful", path, "--k", "2", "--t", "3", "--seed", "1"], capsys)
    assert code == 2


def test_long_cycle_reports(write, capsys):
    path = write("tri.json", triangle())
    code, rep, _ = run(["long-cycle", path, "--k", "4", "--seed", "0"], capsys)
    assert code == 0 and rep["answer"] is False
    assert rep["params"]["alpha"] == 0.5774
    assert rep["params"]["beta"] == 1.0856
    assert rep["params"]["epsilon"] == 0.01
    code, rep, _ = run(["long-cycle", path, "--k", "3", "--seed", "0"], capsys)
    assert rep["answer"] is True and rep["component"] == "first" and rep["length"] == 3


def test_long_cycle_planted_twelve(write, capsys):
    path = write("p12.json", planted_cycle_graph(np.random.default_rng(0), 14, 12, 4))
    code, rep, _ = run(["long-cycle", path, "--k", "12", "--seed", "2"], capsys)
    assert code == 0 and rep["answer"] is True and rep["length"] >= 12


def test_long_cycle_rejects_infeasible_parameters(write, capsys):
    path = write("tri.json", triangle())
    code, rep, err = run(["long-cycle", path, "--k", "3", "--alpha", "0.5", "--beta", "1.0",
                          "--seed", "0"], capsys)
    assert code == 2 and rep is None
    assert "infeasible" in err and "lhs=" in err


def test_bipartite_reports(write, capsys):
    c4 = write("c4.json", cycle_graph(4), bipartition=[[1, 3], [2, 4]])
    code, rep, _ = run(["bipartite", c4, "--k", "4", "--seed", "1"], capsys)
    assert code == 0 and rep["answer"] is True and rep["params"]["k_prime"] == 2
    c6 = write("c6.json", cycle_graph(6))
    code, rep, _ = run(["bipartite", c6, "--k", "8", "--seed", "1"], capsys)
    assert code == 0 and rep["answer"] is False and rep["params"]["k_prime"] == 4
    c5 = write("c5.json", cycle_graph(5))
    code, rep, err = run(["bipartite", c5, "--k", "4", "--seed", "1"], capsys)
    assert code == 2 and "odd cycle" in err


def test_oracle_modes(write, capsys):
    tri = write("tri.json", triangle())
    code, rep, _ = run(["oracle", tri, "--mode", "shortest-colourful", "--k", "3", "--t", "0"], capsys)
    assert code == 0 and rep["answer"] == 3
    k4 = write("k4.json", complete_graph(4).with_specified(3, 4))
    code, rep, _ = run(["oracle", k4, "--mode", "longest-cycle", "--e", "1", "2"], capsys)
    assert rep["answer"] == 4 and rep["params"]["e"] == [1, 2]
    code, _, err = run(["oracle", k4, "--mode", "longest-cycle", "--e", "1", "5"], capsys)
    assert code == 2
    big = write("c20.json", cycle_graph(20))
    code, rep, err = run(["oracle", big, "--mode", "longest-cycle"], capsys)
    assert code == 3 and "limited" in err
    code, _, _ = run(["oracle", tri, "--mode", "shortest-colourful"], capsys)
    assert code == 2


def test_oracle_cover_sum(write, capsys):
    tri = write("tri.json", triangle())
    answers = set()
    for seed in range(12):
        code, rep, _ = run(["oracle", tri, "--mode", "cover-sum", "--k", "3", "--seed", str(seed)], capsys)
        assert code == 0
        assert rep["answer"]["1"] == "inf"
        answers.add(rep["answer"]["0"])
    assert answers == {3, "inf"}
    k6 = write("k6.json", complete_graph(6))
    code, _, _ = run(["oracle", k6, "--mode", "cover-sum", "--k", "3", "--seed", "0"], capsys)
    assert code == 3


def test_check_params(capsys):
    code, rep, _ = run(["check-params", "--k", "8", "--k", "10"], capsys)
    assert code == 0 and rep["answer"] is True
    assert rep["report"]["lhs"] == pytest.approx(0.81805460474656)
    assert [r["k_prime"] for r in rep["per_k"]] == [7, 8]
    assert [r["feasible_at_k"] for r in rep["per_k"]] == [False, True]
    code, rep, _ = run(["check-params", "--alpha", "0.5", "--beta", "1.0", "--epsilon", "0.01"], capsys)
    assert code == 0 and rep["answer"] is False
    code, rep, _ = run(["check-params", "--epsilon", "0.99"], capsys)
    assert any("degenerate" in f for f in rep["report"]["flags"])


def test_bench_writes_a_figure(write, capsys, tmp_path):
    path = write("k5.json", make_graph(5, [(u, v, None, (u + v) % 2) for u in range(1, 6)
                                           for v in range(u + 1, 6)], (1, 2)))
    code, rep, _ = run(["bench", path, "--k-min", "2", "--k-max", "3", "--t", "1", "--trials", "2",
                        "--reps", "1", "--seed", "0", "--plot-dir", str(tmp_path)], capsys)
    assert code == 0
    assert set(rep["answer"]) == {"2", "3"}
    assert len(rep["timing"]["growth"]) == 1
    assert (tmp_path / "scaling.png").exists()


def test_module_entry_point_and_thread_cap(write):
    path = write("tri.json", triangle())
    proc = subprocess.run([sys.executable, "-m", "longcycle", "colourful", path, "--k", "3", "--seed", "4",
                           "--trials", "8"], capture_output=True, text=True,
                          env={"LONGCYCLE_THREADS": "1", "PATH": ""})
    assert proc.returncode == 0, proc.stderr
    rep = json.loads(proc.stdout)
    assert rep["command"] == "colourful"
    proc = subprocess.run([sys.executable, "-m", "longcycle", "colourful", path, "--k", "3"],
                          capture_output=True, text=True, env={"LONGCYCLE_THREADS": "x", "PATH": ""})
    assert proc.returncode == 2 and "LONGCYCLE_THREADS" in proc.stderr
