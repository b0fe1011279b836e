import subprocess
import sys

import pytest

from conftest import (BRIDGE, BRIDGE_Q, CORRIDOR, CORRIDOR_Q, DISJOINT, DISJOINT_Q, STAR, STAR_Q,
                      directed, unit)
from dspaths import cli
from dspaths._accel import USING_NUMBA
from dspaths.graph import gen_random, read_graph


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "dspaths", *map(str, args)],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def lines(out):
    return dict(line.split(" ", 1) for line in out.strip().splitlines())


def test_dsp2_disjoint(write_graph_file):
    code, out, _ = run("dsp2", write_graph_file(DISJOINT), *DISJOINT_Q, "--report")
    assert code == 0
    got = lines(out)
    assert got["DISJOINT"] == "true" and got["P1"] == "0 1 2" and got["P2"] == "3 4 5"
    assert got["SOLVER"] == "dsp2_directed" and got["TRIALS"] == "1"


def test_dsp2_bridge(write_graph_file):
    code, out, _ = run("dsp2", write_graph_file(BRIDGE), *BRIDGE_Q)
    assert code == 1 and lines(out)["DISJOINT"] == "false"


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("directed 2 1\n0 x 5\n")
    code, out, err = run("dsp2", path, 0, 1, 0, 1)
    assert code == 2 and out == "" and "line 2" in err


def test_missing_file(tmp_path):
    assert run("dsp2", tmp_path / "nope.txt", 0, 1, 2, 3)[0] == 2


def test_usage_error():
    assert run("dsp2")[0] == 2


def test_dsp2_rejects_undirected(write_graph_file):
    code, _, err = run("dsp2", write_graph_file(STAR), *STAR_Q)
    assert code == 2 and "KindMismatch" in err


def test_min2dsp_dag_corridor(write_graph_file):
    code, out, _ = run("min2dsp", write_graph_file(CORRIDOR), *CORRIDOR_Q)
    got = lines(out)
    assert code == 0 and got["SOLVER"] == "min2dsp_dag"
    assert got["MIN_INTERSECTIONS"] == "3"
    assert got["P1"] == "0 2 3 4 5" and got["P2"] == "1 2 3 4 6"


def test_min2dsp_undirected_star(write_graph_file):
    code, out, _ = run("min2dsp", write_graph_file(STAR), *STAR_Q)
    got = lines(out)
    assert code == 0 and got["SOLVER"] == "min2dsp_undirected" and got["MIN_INTERSECTIONS"] == "1"
    assert "P1" in got and "P2" in got


def test_min2dsp_general_directed_has_no_witness(write_graph_file):
    g = directed(7, unit([(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (4, 2)]))
    code, out, _ = run("min2dsp", write_graph_file(g), *CORRIDOR_Q)
    got = lines(out)
    assert got["SOLVER"] == "min2dsp_directed" and got["MIN_INTERSECTIONS"] == "3"
    assert "P1" not in got


def test_min2dsp_instance_cap(write_graph_file):
    path = write_graph_file(gen_random(70, 300, (1, 5), "directed", 3))
    code, out, err = run("min2dsp", path, 0, 1, 2, 3)
    assert code == 2 and "InstanceTooLarge" in err and "--force-large" in err


def test_oracle_agrees_with_solver(write_graph_file):
    path = write_graph_file(CORRIDOR)
    _, ours, _ = run("min2dsp", path, *CORRIDOR_Q)
    _, ref, _ = run("oracle", path, *CORRIDOR_Q)
    assert lines(ours)["MIN_INTERSECTIONS"] == lines(ref)["MIN_INTERSECTIONS"]
    assert lines(ref)["DISJOINT"] == "false"


def test_oracle_cap_hint(write_graph_file):
    from conftest import layered
    path = write_graph_file(layered(6))
    code, _, err = run("oracle", path, 0, 18, 0, 18, "--cap", 10)
    assert code == 2 and "CapExceeded" in err and "shrink" in err


@pytest.mark.parametrize("kind", ["directed", "undirected", "dag"])
def test_gen_then_parse(tmp_path, kind):
    path = tmp_path / "g.txt"
    assert cli.main(["gen", "20", "40", "--kind", kind, "--seed", "5", "-o", str(path)]) == 0
    g = read_graph(path)
    assert g.n == 20 and g.m == 40


def test_gen_to_stdout_is_reproducible():
    a = run("gen", 10, 15, "--seed", 2)[1]
    b = run("gen", 10, 15, "--seed", 2)[1]
    assert a == b and a.startswith("directed 10 15")


def test_output_is_byte_identical(write_graph_file):
    path = write_graph_file(gen_random(30, 90, (1, 5), "undirected", 9))
    first = run("min2dsp", path, 0, 1, 2, 3, "--seed", 17)
    second = run("min2dsp", path, 0, 1, 2, 3, "--seed", 17)
    assert first[:2] == second[:2]
    assert "SEED 17" in first[1]


@pytest.mark.skipif(not USING_NUMBA, reason="the performance criterion assumes the compiled backend")
def test_selftest_small_scale():
    code, out, _ = run("selftest", "--scale", 0.02)
    assert code == 0
    assert out.count("PASS criterion") == 13 and "SELFTEST PASS" in out
