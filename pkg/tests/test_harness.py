import json
import math

import numpy as np
import pytest

from rgmod import harness as H
from rgmod.generators import PAParams, SPAParams, gen_pa, gen_spa
from rgmod.graph import GraphError


def test_checkpoints():
    pts = H.pa_checkpoints(0.25, 1000)
    assert pts[0] == 250 and pts[-1] == 1000
    assert all(a < b for a, b in zip(pts, pts[1:]))
    assert H.pa_checkpoints(1.0, 50) == [50]


def test_early_volume_trajectory_exact_ends():
    m, n, c = 2, 5000, 0.25
    g = gen_pa(PAParams(n=n, m=m, seed=0))
    y = H.early_volume_trajectory(g, c, [int(c * n), n])
    assert y[0] == 2 * m * int(c * n)
    deg = g.degrees()
    assert y[1] == deg[: int(c * n)].sum()
    assert H.early_volume_trajectory(g, 1.0, [n])[0] == 2 * m * n


def test_martingale_small():
    assert H.martingale_check(2, 0.25, 20_000, 10, seed=0) >= 0.9
    with pytest.raises(GraphError):
        H.martingale_check(2, 0.0001, 100, 1)


def test_degree_growth_slope():
    prm = SPAParams(n=10_000, p=0.7, A1=1.0, A2=1.0, seed=0)
    slope = H.degree_growth_check(prm)
    assert 0.55 <= slope <= 0.85
    flat = H.degree_growth_check(SPAParams(n=5000, p=0.7, A1=0.01, A2=1.0, seed=0))
    assert abs(flat) < 0.1


def test_outdegree_ratio_stable():
    ratios = [H.outdegree_log_ratio(gen_spa(SPAParams(n=n, seed=1))) for n in (2000, 20_000)]
    assert all(r < 1.0 for r in ratios)
    assert max(ratios) / min(ratios) < 2.5


def test_component_count_small_and_errors():
    assert H.component_count_check(1, 1, 3) == 1.0
    with pytest.raises(GraphError):
        H.component_count_check(2, 100, 3)
    mean, var = H.expected_pa_components(100_000)
    assert mean == pytest.approx(sum(1 / (2 * t - 1) for t in range(1, 100_001)))
    assert 0 < var < mean


def test_component_count_matches_exact_expectation():
    n, trials = 20_000, 30
    got = H.component_count_check(1, n, trials, seed=100)
    mean, var = H.expected_pa_components(n)
    assert abs(got - mean) <= 3 * math.sqrt(var / trials)


@pytest.mark.parametrize("m", [1, 2])
def test_power_law_slope(m):
    assert -2.25 <= H.power_law_check(m, 100_000, trials=1, seed=0) <= -1.75


def test_power_law_errors():
    with pytest.raises(GraphError, match="insufficient range"):
        H.power_law_check(1, 50)
    with pytest.raises(GraphError):
        H.power_law_check(2, 1000, k_max=3)


def test_experiment_regular_avgdeg(tmp_path):
    cfg = H.ExperimentConfig(model="regular", model_params={"n": 10_000, "d": 3},
                             method="avgdeg", trials=3, base_seed=0,
                             out_csv=str(tmp_path / "r.csv"), out_json=str(tmp_path / "r.json"))
    res = H.run_experiment(cfg)
    assert res.passed
    assert res.summary["q_mean"] >= 2 / 3 * 0.95
    assert all(t["q"] <= H.B.u3(3) + 0.01 for t in res.trials)
    assert [t["seed"] for t in res.trials] == [0, 1, 2]
    doc = json.loads((tmp_path / "r.json").read_text())
    assert doc["schema_version"] == H.RESULT_SCHEMA_VERSION
    assert "out_csv" not in doc["config"]


def test_experiment_pa_majority_band():
    cfg = H.ExperimentConfig(model="pa", model_params={"n": 50_000, "m": 8},
                             method="majority", trials=3)
    res = H.run_experiment(cfg)
    assert 0.116 <= res.summary["q_mean"] <= 0.156
    assert res.trials[0]["bounds"]["pa_upper"] == 0.9375


def test_experiment_spa_rows_and_reproducible(tmp_path):
    def run(tag):
        cfg = H.ExperimentConfig(model="spa", model_params={"n": 3000}, method="strips",
                                 method_params={"omega": 2}, trials=2, base_seed=4,
                                 out_csv=str(tmp_path / f"{tag}.csv"),
                                 out_json=str(tmp_path / f"{tag}.json"))
        return H.run_experiment(cfg)

    run("a")
    run("b")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    header = (tmp_path / "a.csv").read_text().splitlines()[0].split(",")
    assert header[:6] == ["trial", "seed", "n", "n_edges", "parts", "q"]


def test_experiment_config_validation(tmp_path):
    with pytest.raises(ValueError):
        H.ExperimentConfig(trials=0)
    with pytest.raises(ValueError):
        H.ExperimentConfig(model="er")
    ini = tmp_path / "c.ini"
    ini.write_text("[experiment]\nmodel = pa\nmethod = majority\ntrials = 2\n"
                   "[model]\nn = 1000\nm = 4\n[method]\neps = 0.1\n")
    cfg = H.load_config(ini, {"trials": 5, "method": None})
    assert cfg.model == "pa" and cfg.method == "majority" and cfg.trials == 5
    assert cfg.model_params == {"n": 1000, "m": 4}
    assert cfg.method_params == {"eps": 0.1}


def test_decomposition_violation_detector():
    from rgmod.graph import Graph, Partition
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert "volume above h" in H.decomposition_violations(g, 2, Partition([0, 0, 0, 0]))
    assert "disconnected part" in H.decomposition_violations(g, 10, Partition([0, 1, 1, 0]))


def test_small_corpus_mix():
    graphs = H.small_random_graphs(20, seed=0)
    assert len(graphs) == 20
    assert all(g.n <= 10 and g.n_edges > 0 for g in graphs)
    assert any(g.is_regular() for g in graphs)


def test_check_result_line():
    r = H.CheckResult("x", True, {"a": 0.5, "b": 3})
    assert r.line() == "[PASS] x: a=0.5, b=3"
