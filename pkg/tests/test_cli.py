import csv
import json

import pytest

from rgmod.cli import main
from rgmod.graph import read_edgelist, read_partition


def test_gen_regular_and_partition(tmp_path, capsys):
    g = tmp_path / "g.txt"
    assert main(["--seed", "1", "--out", str(g), "gen", "regular", "--n", "500", "--simple"]) == 0
    graph = read_edgelist(g)
    assert graph.is_regular() == 3 and graph.is_simple()
    p = tmp_path / "p.txt"
    assert main(["--out", str(p), "partition", str(g), "--method", "avgdeg"]) == 0
    assert "avg_degree_lower: pass" in capsys.readouterr().out
    assert read_partition(p, 500).k > 1


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    main(["--seed", "4", "--out", str(a), "gen", "--model", "pa", "--n", "300", "--m", "3"])
    main(["--seed", "4", "--out", str(b), "gen", "pa", "--n", "300", "--m", "3"])
    assert a.read_bytes() == b.read_bytes()


def test_gen_spa_writes_positions_and_strips(tmp_path, capsys):
    g = tmp_path / "s.txt"
    assert main(["--out", str(g), "gen", "spa", "--n", "1500"]) == 0
    assert (tmp_path / "s.txt.pos").read_text().startswith("dim 2 ")
    out = tmp_path / "sp.txt"
    assert main(["partition", "--in", str(g), "--method", "strips", "--omega", "3",
                 "--partition-out", str(out)]) == 0
    assert read_partition(out).k == 3


def test_majority_from_file(tmp_path, capsys):
    g = tmp_path / "pa.txt"
    main(["--out", str(g), "gen", "pa", "--n", "4000", "--m", "8"])
    capsys.readouterr()
    assert main(["partition", str(g), "--method", "majority"]) == 0
    assert "parts=2" in capsys.readouterr().out


def test_modularity_command(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("n 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n")
    p = tmp_path / "p.txt"
    p.write_text("".join(f"{v} {v // 3}\n" for v in range(6)))
    assert main(["modularity", str(g), str(p), "--exact"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["q"] == pytest.approx(5 / 14)
    assert doc["q_star"] == pytest.approx(5 / 14)
    assert main(["modularity", str(g)]) == 0
    assert json.loads(capsys.readouterr().out)["q"] == pytest.approx(0.0, abs=1e-15)


def test_bounds_csv(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert main(["bounds", "--d-range", "3..4", "--m-range", "7,8", "--csv", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["param", "name", "value"]
    assert ["d=3", "U3", "0.803787"] in rows
    assert "0.8038" in capsys.readouterr().out


def test_config_file_and_override(tmp_path, capsys):
    ini = tmp_path / "c.ini"
    ini.write_text("[global]\nseed = 9\n[gen]\nn = 40\nm = 2\n")
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    main(["--config", str(ini), "--out", str(a), "gen", "pa"])
    main(["--seed", "9", "--out", str(b), "gen", "pa", "--n", "40", "--m", "2"])
    assert a.read_bytes() == b.read_bytes()
    main(["--config", str(ini), "--out", str(a), "gen", "pa", "--n", "10"])
    assert read_edgelist(a).n == 10


def test_experiment_command(tmp_path, capsys):
    ini = tmp_path / "e.ini"
    ini.write_text("[experiment]\nmodel = regular\nmethod = avgdeg\ntrials = 2\n"
                   "[model]\nn = 2000\nd = 3\n")
    prefix = tmp_path / "run"
    assert main(["--config", str(ini), "--out", str(prefix), "experiment"]) == 0
    assert "asserted=pass" in capsys.readouterr().out
    first = (tmp_path / "run.json").read_bytes()
    main(["--config", str(ini), "--out", str(prefix), "experiment"])
    assert (tmp_path / "run.json").read_bytes() == first
    assert main(["--out", str(prefix), "experiment", "--model", "pa", "--method", "majority",
                 "--trials", "1", "--param", "n=2000", "--param", "m=4"]) == 0


def test_errors_give_nonzero_exit(tmp_path, capsys):
    assert main(["gen"]) == 2
    assert main(["partition", str(tmp_path / "missing.txt")]) == 2
    g = tmp_path / "c.txt"
    g.write_text("n 4\n0 1\n1 2\n2 3\n3 0\n")
    # a cycle is not a forest
    assert main(["partition", str(g), "--method", "forest"]) == 2


def test_verify_quick(tmp_path, capsys):
    report = tmp_path / "v.json"
    assert main(["--out", str(report), "verify"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == len(json.loads(report.read_text()))
