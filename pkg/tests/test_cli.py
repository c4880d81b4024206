import json
import subprocess
import sys

import pytest

from polarnets.cli import main

FERMAT = "x0^3+x1^3+x2^3+x3^3+x4^3+x5^3"
SIX_LINES = "x0*x1*x2*(x0+x1+x2)*(x0+2*x1+3*x2)*(x0+5*x1+7*x2)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_polar_fermat(capsys):
    code, rep = run_json(capsys, "polar", "--cubic", FERMAT)
    assert code == 0
    assert rep["schema"] == 1 and rep["command"] == "polar" and rep["seed"] == 0
    assert list(rep["results"]["partials"].values()) == [f"3*x{i}^2" for i in range(6)]
    assert rep["results"]["polar_dimension"] == 6
    assert all(c["name"] and c["passed"] for c in rep["checks"])


def test_integrate_example(capsys):
    code, rep = run_json(capsys, "integrate", "--example", "paper")
    assert code == 0
    assert rep["results"]["projective_dimension"] == 10
    assert rep["results"]["relations"] == ["s1 = 3*s0", "s2 = 3*s1"]
    assert len(rep["results"]["free_monomials"]) == 10


def test_nodes_six_lines(capsys):
    code, rep = run_json(capsys, "nodes", "--curve", SIX_LINES)
    assert code == 0 and rep["results"]["delta"] == 15


def test_nodes_with_components(capsys):
    code, rep = run_json(capsys, "nodes", "--curve", SIX_LINES, "--expect", "15",
                         "--components", "x0;x1;x2;x0+x1+x2;x0+2*x1+3*x2;x0+5*x1+7*x2")
    assert code == 0
    assert rep["ok"]


def test_failed_check_exits_one(capsys):
    code, out, _ = run(capsys, "nodes", "--curve", "x0*x1*x2", "--expect", "2")
    assert code == 1
    assert "[FAIL]" in out and out.rstrip().endswith("FAILED")


@pytest.mark.parametrize("argv, token", [
    (["polar", "--cubic", "x0^3+x9"], "x9"),
    (["nodes", "--curve", "x0*x1*$"], "$"),
    (["integrate", "--quadrics", "x0^2;x1^2+(x2"], "("),
])
def test_parse_errors_exit_two_and_name_the_token(capsys, argv, token):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert f"'{token}'" in err
    assert out == ""


def test_invalid_prime_exits_two(capsys):
    code, _, err = run(capsys, "hesse", "--prime", "11")
    assert code == 2 and "11" in err


def test_unknown_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    capsys.readouterr()


@pytest.mark.parametrize("argv", [
    ["discriminant", "--cubic", FERMAT, "--plane", "1,2,0,1,0,3;0,1,1,2,1,0;1,0,0,1,3,1", "--delta"],
    ["discriminant", "--quadrics", "x0^2;x1^2+x2*x3;x4*x5+x2^2"],
    ["indep", "--points", "1,0,0;0,1,0;0,0,1"],
    ["triangle-lemma"],
    ["fermat-demo"],
    ["hesse"],
    ["hesse", "--prime", "7"],
    ["tangency"],
    ["polar", "--cubic", FERMAT, "--field", "fp", "--prime", "101"],
])
def test_subcommands_pass(capsys, argv):
    code, rep = run_json(capsys, *argv)
    assert code == 0, rep["checks"]
    assert rep["schema"] == 1 and rep["ok"]
    assert "wall_time" not in rep


def test_seed_and_prime_are_echoed(capsys):
    _, rep = run_json(capsys, "hesse", "--seed", "4")
    assert rep["seed"] == 4 and rep["prime"] % 3 == 1


def test_timing_is_opt_in(capsys):
    _, rep = run_json(capsys, "polar", "--cubic", FERMAT, "--timing")
    assert rep["wall_time"] >= 0


def test_reports_are_byte_identical(capsys):
    argv = ["fermat-demo", "--seed", "3", "--json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    argv = ["tangency", "--t0", "1"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-c", "import sys; from polarnets.cli import main; sys.exit(main())",
                           "verify-all", "--only", "1,5"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "[PASS] [1]" in proc.stdout and "[PASS] [5]" in proc.stdout
