import io
import subprocess
import sys

import pytest

from circenum.cli import EXIT_COMPLETE, EXIT_ERROR, EXIT_LIMIT, run_cli

T1_FILE = "p cnf 5 3\n1 3 0\n-1 2 4 0\n-1 -2 5 0\nm 3 4 5 0\n"
T2_FILE = "p cnf 6 6\n1 3 0\n-1 2 4 0\n-1 -2 5 0\n-6 3 0\n-6 4 0\n-6 5 0\nm 3 4 5 0\nz 1 2 0\n"


def cli(args, text=""):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(args, stdin=io.StringIO(text), stdout=out, stderr=err)
    return code, out.getvalue().splitlines(), err.getvalue().splitlines()


def model_lines(lines, prefix="v"):
    return [l for l in lines if l.startswith(prefix + " ")]


def test_t1_output():
    code, lines, _ = cli(["-"], T1_FILE)
    assert code == EXIT_COMPLETE
    assert set(model_lines(lines)) == {"v 3 0", "v 2 3 0", "v 1 4 0", "v 1 2 5 0"}
    assert len(model_lines(lines)) == 4
    assert lines[-1] == "c models 4 complete yes"


def test_t2_sizes_nondecreasing():
    code, lines, _ = cli(["-"], T2_FILE)
    assert code == EXIT_COMPLETE
    vs = model_lines(lines)
    assert len(vs) == 8
    sizes = [len({3, 4, 5} & set(map(int, l.split()[1:-1]))) for l in vs]
    assert sizes == sorted(sizes)
    assert lines[-1] == "c models 8 complete yes"


def test_limit_exit_code():
    code, lines, _ = cli(["-n", "1", "-"], T1_FILE)
    assert code == EXIT_LIMIT
    assert len(model_lines(lines)) == 1
    assert lines[-1] == "c models 1 complete no"


def test_circ_wit_one():
    code, lines, _ = cli(["--circ-wit", "1", "-"], T2_FILE)
    assert code == EXIT_COMPLETE
    assert len(model_lines(lines)) == 4


def test_mcs_pair():
    code, lines, _ = cli(["--mcs", "-"], "p cnf 1 2\n1 0\n-1 0\n")
    assert code == EXIT_COMPLETE
    assert sorted(model_lines(lines, "m")) == ["m 1 0", "m 2 0"]
    assert lines[-1] == "c models 2 complete yes"


def test_mcs_satisfiable_prints_empty_set():
    code, lines, _ = cli(["--mcs", "-"], "p cnf 2 1\n1 2 0\n")
    assert lines == ["m 0", "c models 1 complete yes"]


def test_empty_model_line():
    code, lines, _ = cli(["-"], "p cnf 1 0\nm 1 0\n")
    assert lines == ["v 0", "c models 1 complete yes"]


def test_unsat_input():
    code, lines, _ = cli(["-"], "p cnf 1 2\n1 0\n-1 0\nm 1 0\n")
    assert code == EXIT_COMPLETE
    assert lines == ["c models 0 complete yes"]


def test_stats_on_stderr():
    code, lines, err = cli(["--stats", "-"], T1_FILE)
    names = {l.split()[2] for l in err if l.startswith("c stat ")}
    assert {"solve_calls", "cores", "shrink_solves", "models", "witnesses"} <= names
    assert "c stat models 4" in err
    assert "c stat deleted 0" in err
    assert not any(l.startswith("c stat") for l in lines)


@pytest.mark.parametrize(
    "args, text",
    [
        (["-"], "p cnf 1 0\nm 1 0\nz 1 0\n"),
        (["-"], "garbage\n"),
        (["--mcs", "-"], "p cnf 1 1\n1 0\nm 1 0\n"),
        (["/nonexistent/file.cnf"], ""),
        (["-n", "-3", "-"], T1_FILE),
        (["--bogus", "-"], T1_FILE),
        ([], ""),
    ],
)
def test_errors_exit_one(args, text):
    code, _, _ = cli(args, text)
    assert code == EXIT_ERROR


def test_file_argument(tmp_path):
    path = tmp_path / "t1.cnf"
    path.write_text(T1_FILE)
    code, lines, _ = cli([str(path)])
    assert code == EXIT_COMPLETE and len(model_lines(lines)) == 4


def test_output_is_deterministic():
    runs = [cli(["-"], T2_FILE)[1] for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]
    runs = [cli(["--mcs", "-"], "p cnf 2 3\n1 0\n-1 2 0\n-2 0\n")[1] for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "circenum.cli", "-"],
        input=T1_FILE, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "c models 4 complete yes"
