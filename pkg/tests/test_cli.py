import io

import pytest

from vcsndp.cli import run

FEASIBLE = "graph 4 4\nedge 0 1 1\nedge 1 2 1\nedge 2 3 1\nedge 3 0 1\nreq 0 2 2\n"


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def inst_file(tmp_path):
    path = tmp_path / "inst.txt"
    path.write_text(FEASIBLE)
    return path


def test_gen_deterministic(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    for path in (a, b):
        code, _, _ = invoke(["gen", "--model", "wheel", "--n", "6", "--k", "2",
                             "--pairs", "2", "--seed", "3", "-o", str(path)])
        assert code == 0
    assert a.read_text() == b.read_text()


def test_solve_feasible_exit_zero(inst_file, tmp_path):
    sol = tmp_path / "sol.txt"
    code, out, _ = invoke([
        "solve", str(inst_file), "--seed", "1", "--backend", "exact",
        "--verify", "--verify-family", "-o", str(sol)])
    assert code == 0
    assert "FEASIBLE" in out
    assert "cost 4" in out
    assert sol.exists()


def test_solve_json_determinism(inst_file, tmp_path):
    reports = []
    for name in ("r1.json", "r2.json"):
        path = tmp_path / name
        code, _, _ = invoke(["solve", str(inst_file), "--seed", "5",
                             "--verify", "--json", str(path)])
        assert code == 0
        reports.append(path.read_bytes())
    assert reports[0] == reports[1]


def test_verify_infeasible_names_pair(inst_file, tmp_path):
    sol = tmp_path / "sol.txt"
    sol.write_text("solution 3 3\n0\n1\n2\n")
    code, out, _ = invoke(["verify", str(inst_file), str(sol)])
    assert code == 1
    assert "pair (0,2)" in out
    assert "achieved 1" in out
    assert "INFEASIBLE" in out


def test_verify_feasible(inst_file, tmp_path):
    sol = tmp_path / "sol.txt"
    sol.write_text("solution 4 4\n0\n1\n2\n3\n")
    code, out, _ = invoke(["verify", str(inst_file), str(sol)])
    assert code == 0
    assert "FEASIBLE" in out


def test_malformed_instance_exit_two(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("graph 2 1\nedge 0 0 1\n")
    code, _, err = invoke(["solve", str(bad)])
    assert code == 2
    assert "self-loop" in err


def test_infeasible_instance_exit_one(tmp_path):
    path = tmp_path / "inf.txt"
    path.write_text("graph 3 2\nedge 0 1 1\nedge 1 2 1\nreq 0 2 2\n")
    code, _, err = invoke(["solve", str(path)])
    assert code == 1
    assert "vertex-disjoint" in err


def test_param_override_requires_relation(inst_file):
    code, _, err = invoke(["solve", str(inst_file), "--p", "3", "--q", "1"])
    assert code == 2
    assert "2kq" in err
    code, out, _ = invoke(["solve", str(inst_file), "--p", "3", "--q", "1",
                           "--unsafe-params", "--verify"])
    assert code in (0, 1)  # tiny family may or may not be good enough


def test_p_without_q_rejected(inst_file):
    code, _, err = invoke(["solve", str(inst_file), "--p", "4"])
    assert code == 2


def test_usage_error_exit_two():
    code, _, _ = invoke(["solve"])  # missing instance path
    assert code == 2
    code, _, _ = invoke(["nonesuch"])
    assert code == 2


def test_family_check_command():
    code, out, _ = invoke(["family", "--terminals", "6", "--k", "2",
                           "--basis", "12", "--seed", "3", "--check"])
    assert code == 0
    assert "p 2548 q 637" in out
    assert "good True" in out


def test_family_dump_and_estimate():
    code, out, _ = invoke(["family", "--terminals", "4", "--k", "1",
                           "--basis", "4", "--seed", "1", "--dump",
                           "--estimate", "200"])
    assert code == 0
    assert "family 178 89 1" in out  # q = ceil(64 ln 4) = 89, p = 178
    assert "rate_e1 0.0" in out


def test_exact_command(inst_file):
    code, out, _ = invoke(["exact", str(inst_file)])
    assert code == 0
    assert "cost 4" in out


def test_exact_budget_exit_three(tmp_path):
    path = tmp_path / "big.txt"
    code, _, _ = invoke(["gen", "--model", "erdos-renyi", "--n", "9",
                         "--edge-param", "0.6", "--k", "2", "--pairs", "3",
                         "--seed", "2", "-o", str(path)])
    assert code == 0
    code, _, err = invoke(["exact", str(path), "--budget", "3"])
    assert code == 3
    assert "budget" in err.lower()


def test_bench_command(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for seed in (1, 2):
        invoke(["gen", "--model", "wheel", "--n", "6", "--k", "2",
                "--pairs", "2", "--seed", str(seed),
                "-o", str(corpus / f"w{seed}.txt")])
    report = tmp_path / "bench.json"
    code, out, _ = invoke(["bench", str(corpus), "--seed", "4",
                           "--verify", "--verify-family",
                           "--no-timing", "--json", str(report)])
    assert code == 0
    assert "instances 2" in out
    first = report.read_bytes()
    invoke(["bench", str(corpus), "--seed", "4", "--verify",
            "--verify-family", "--no-timing", "--json", str(report)])
    assert report.read_bytes() == first
