"""End-to-end command-line behavior: outputs, determinism, exit codes."""

import json
import subprocess
import sys

import pytest

PY = [sys.executable, "-m", "bruhat_orders.cli"]


def run(*args, env=None):
    import os

    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        PY + list(args), capture_output=True, text=True, env=full_env, timeout=300
    )


def test_packets_enumeration():
    r = run("packets", "--n", "4", "--k", "2")
    assert r.returncode == 0
    assert r.stdout.split() == ["12", "13", "14", "23", "24", "34"]


def test_packets_of_generator():
    r = run("packets", "--n", "4", "--generator", "134")
    assert r.returncode == 0
    assert "13 < 14 < 34" in r.stdout


def test_check_order():
    r = run("check-order", "--n", "4", "23<13<24<14<12<34")
    assert r.returncode == 0 and "admissible" in r.stdout
    r = run("check-order", "--n", "4", "12<13<34<14<24<23")
    assert r.returncode == 0 and "not admissible" in r.stdout and "134" in r.stdout


def test_inv_command():
    r = run("inv", "--n", "4", "23<13<24<14<12<34")
    assert r.returncode == 0
    assert r.stdout.strip() == "{123,124}"


def test_flips_command():
    r = run("--format", "json", "flips", "--n", "4", "34<12<14<24<13<23", "--both")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    flips = {(tuple(f["flip"]), f["orientation"]) for f in data["flips"]}
    assert flips == {((1, 2, 4), "lex"), ((1, 3, 4), "anti")}


def test_bruhat_dot_output(tmp_path):
    out = tmp_path / "b42.dot"
    r = run("--format", "dot", "--out", str(out), "bruhat", "--n", "4", "--k", "2")
    assert r.returncode == 0
    dot = out.read_text()
    assert dot.count("->") == 8
    assert "nodes=8 edges=8" in r.stderr


def test_bruhat_json_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    r1 = run("--format", "json", "--out", str(a), "bruhat", "--n", "4", "--k", "2")
    r2 = run("--format", "json", "--out", str(b), "bruhat", "--n", "4", "--k", "2",
             env={"BRUHAT_THREADS": "4"})
    assert r1.returncode == r2.returncode == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["schema"] == "bruhat/1"
    assert len(data["nodes"]) == 8


def test_bruhat_41():
    r = run("bruhat", "--n", "4", "--k", "1")
    assert r.returncode == 0
    assert "nodes=24" in r.stderr


def test_bruhat_21():
    r = run("bruhat", "--n", "2", "--k", "1")
    assert r.returncode == 0
    assert "nodes=2 edges=1" in r.stderr


def test_paths_to():
    r = run("paths-to", "--n", "4", "--members", "12", "13", "23")
    assert r.returncode == 0
    assert "nodes=2" in r.stderr


def test_word_second_order_is_b42():
    r = run("--format", "json", "word", "stutst", "--second-order")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert len(data["nodes"]) == 8


def test_word_rex_graph():
    r = run("--format", "json", "word", "sts", "--n", "3", "--rex-graph")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["expressions"] == 2
    assert len(data["classes"]) == 2


def test_word_empty():
    r = run("word", "", "--n", "3", "--inv")
    assert r.returncode == 0
    assert r.stdout.strip() == "{}"


def test_word_ladder():
    r = run("--format", "json", "word", "stutst", "--ladder", "3")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    levels = {entry["level"]: entry for entry in data["levels"]}
    assert levels[2]["poset"]["nodes"] == 8
    assert levels[3]["poset"]["nodes"] == 2


def test_ladder_command():
    r = run("ladder", "--n", "4", "--members", "12", "13", "23", "--max-level", "3")
    assert r.returncode == 0
    assert "level 2" in r.stdout and "level 3" in r.stdout


def test_verify_counterexample():
    r = run("--format", "json", "verify", "counterexample")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["ok"] is True
    assert all(a["status"] == "pass" for a in data["assertions"])


def test_verify_ziegler():
    r = run("verify", "ziegler", "--n", "4", "--k", "2")
    assert r.returncode == 0
    assert "[PASS]" in r.stdout and "[FAIL]" not in r.stdout


def test_verify_flip_oracle():
    r = run("verify", "flip-oracle", "--n", "4", "--k", "2")
    assert r.returncode == 0


def test_verify_thm43_limited():
    r = run("verify", "thm43", "--n", "4", "--limit", "4")
    assert r.returncode == 0


def test_verify_affine():
    r = run("verify", "affine", "--period", "3", "--max-len", "3")
    assert r.returncode == 0


def test_affine_single_word():
    r = run("--format", "json", "affine", "--period", "3", "--word", "121")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["realizable"] is True
    assert len(data["inversions"]) == 3


def test_affine_sweep_json_lines():
    r = run("affine", "--period", "3", "--max-len", "2")
    assert r.returncode == 0
    rows = [json.loads(line) for line in r.stdout.strip().splitlines()]
    assert all(row["realizable"] for row in rows)
    assert all(row["unique_source_and_sink"] for row in rows)
    assert any(row["word"] == "" for row in rows)


def test_exit_code_verification_failure():
    # a well-formed but inadmissible order cannot have an inversion set
    r = run("inv", "--n", "4", "12<13<34<14<24<23")
    assert r.returncode == 4


def test_export_roundtrip(tmp_path):
    poset_json = tmp_path / "poset.json"
    run("--format", "json", "--out", str(poset_json), "bruhat", "--n", "4", "--k", "2")
    r = run("--format", "dot", "export", "--input", str(poset_json))
    assert r.returncode == 0
    assert r.stdout.count("->") == 8


def test_exit_code_usage():
    assert run("bruhat", "--n", "4").returncode == 2  # missing --k
    assert run("nonsense").returncode == 2
    assert run("check-order", "--n", "4", "12<12").returncode == 2


def test_exit_code_budget():
    r = run("--max-nodes", "5", "bruhat", "--n", "4", "--k", "2")
    assert r.returncode == 3
    assert "budget" in r.stderr


def test_env_budget(tmp_path):
    r = run("bruhat", "--n", "4", "--k", "2", env={"BRUHAT_MAX_NODES": "5"})
    assert r.returncode == 3
