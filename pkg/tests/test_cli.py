import json

import pytest

from gorlab import generators as gen
from gorlab.cli import main
from gorlab.graph import parse_graph, to_graph6


def write(path, text):
    path.write_text(text)
    return str(path)


def test_connectivity_graph6(tmp_path, capsys):
    f = write(tmp_path / "k4.g6", to_graph6(gen.complete(4)) + "\n")
    assert main(["connectivity", "--in", f]) == 0
    out = capsys.readouterr().out
    assert "kappa=3" in out and "witness=" in out


def test_connectivity_model_with_cut(capsys):
    assert main(["connectivity", "--model", "star:5"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "kappa=1"
    assert "0" in out[1]


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "p.txt"
    assert main(["gen", "--model", "petersen", "--out", str(out)]) == 0
    assert parse_graph(out.read_text()) == gen.petersen()
    assert main(["gen", "--model", "cycle:5", "--format", "graph6"]) == 0
    assert parse_graph(capsys.readouterr().out.strip(), "graph6") == gen.cycle(5)


def test_construct_then_verify(tmp_path, capsys):
    g = write(tmp_path / "c5.txt", "5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    rep = tmp_path / "rep.json"
    assert main(["construct", "--in", g, "--D", "3", "--seed", "4", "--out", str(rep)]) == 0
    assert main(["verify", "--graph", g, "--rep", str(rep)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["gor"] is True


def test_verify_failure_exit_code(tmp_path, capsys):
    g = write(tmp_path / "s.txt", "5\n0 1\n0 2\n0 3\n0 4\n")
    rep = tmp_path / "rep.json"
    assert main(["construct", "--in", g, "--D", "3", "--out", str(rep)]) == 1
    assert "no GOR exists" in capsys.readouterr().err
    assert main(["verify", "--graph", g, "--rep", str(rep)]) == 1


def test_input_errors(tmp_path):
    assert main(["connectivity", "--bogus"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["connectivity", "--in", str(tmp_path / "missing.txt")]) == 2
    bad = write(tmp_path / "bad.txt", "3\n0 5\n")
    assert main(["connectivity", "--in", bad]) == 2
    assert main(["connectivity"]) == 2
    g = write(tmp_path / "c.txt", "2\n0 1\n")
    junk = write(tmp_path / "r.json", "{not json")
    assert main(["verify", "--graph", g, "--rep", junk]) == 2
    assert main(["experiment", "--model", "cycle:4", "--D", "9", "--trials", "1"]) == 2


def test_experiment_star_reports_certificate(tmp_path, capsys):
    out = tmp_path / "res.json"
    assert main(["experiment", "--model", "star:5", "--D", "3", "--trials", "100", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "no GOR" in text
    doc = json.loads(out.read_text())
    assert doc["total_successes"] == 0 and doc["no_gor_certificate"] == [0]


def test_experiment_config_precedence(tmp_path):
    cfg = write(tmp_path / "exp.cfg", "graph = cycle:5\nD = 3\ntrials = 7\nmode = exact\nseed = 2\n")
    out = tmp_path / "res.json"
    assert main(["experiment", "--config", cfg, "--trials", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["trials"] == 3 and doc["config"]["seed"] == 2
    assert doc["total_successes"] == 3
    assert main(["experiment", "--config", str(tmp_path / "nope.cfg")]) == 2


def test_experiment_env_mode(tmp_path, monkeypatch):
    monkeypatch.setenv("GORLAB_MODE", "float")
    out = tmp_path / "res.json"
    assert main(["experiment", "--model", "cycle:5", "--D", "3", "--trials", "2", "--out", str(out), "--timing"]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["mode"] == "float"
    assert "wall_time" in doc["per_ordering"][0]


def test_experiment_replay_files_identical(tmp_path):
    args = ["experiment", "--model", "petersen", "--D", "7", "--trials", "5", "--orderings", "random:2", "--seed", "9"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_lemmas_command(capsys):
    assert main(["lemmas", "--count", "10", "--n-max", "7", "--seed", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] is True and doc["graphs"] == 10
