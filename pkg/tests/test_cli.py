import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from sagbi import PolyRing, parse_polynomial, parse_problem
from sagbi.cli import render_text, run
from sagbi.poly import format_poly
from sagbi.textio import ProblemError

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"
GOLDEN = Path(__file__).resolve().parent / "golden"

GOLDEN_RUNS = {
    "sagbi_three_gens": ["sagbi", "three_gens.txt", "--trail", "--certificates"],
    "sg_ideal": ["sg", "ideal.txt", "--trail", "--certificates"],
    "syz_syzygies": ["syz", "syzygies.txt", "--certificates"],
    "member_ideal": ["member", "ideal.txt", "--poly", "(2*y^2)*(4*x^2*y^2 + 2*x*y^3)",
                      "--certificates"],
    "reduce_ideal": ["reduce", "ideal.txt", "--poly", "36*x*y^5 + 2*y^2", "--certificates"],
    "sagbi_three_gens_json": ["sagbi", "three_gens.txt", "--trail", "--json"],
}


def invoke(args):
    out, err = io.StringIO(), io.StringIO()
    code = run(args, out, err)
    return code, out.getvalue(), err.getvalue()


def golden_args(name):
    cmd, file, *flags = GOLDEN_RUNS[name]
    return [cmd, str(PROBLEMS / file), *flags]


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_output(name):
    code, out, err = invoke(golden_args(name))
    assert code == 0, err
    assert out == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


def test_sagbi_report_content():
    code, out, _ = invoke(["sagbi", str(PROBLEMS / "three_gens.txt")])
    assert code == 0
    assert "status: Completed" in out and "  f4: 3*x*y" in out


def test_syz_prints_replay_line():
    code, out, _ = invoke(["syz", str(PROBLEMS / "syzygies.txt")])
    assert code == 0
    assert "replay: all" in out and "H = W*G and G = U*H hold" in out


def test_member_zero_is_trivial():
    code, out, _ = invoke(["member", str(PROBLEMS / "ideal.txt"), "--poly", "0"])
    assert code == 0 and "result: member (trivially)" in out


def write(tmp_path, text):
    p = tmp_path / "problem.txt"
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_parse_errors_exit_2(tmp_path):
    code, out, err = invoke(["sagbi", write(tmp_path, "vars = x, y\n[F]\n2x + y\n")])
    assert code == 2 and out == ""
    assert "line 3, column 2" in err and "implicit multiplication" in err
    code, _, err = invoke(["sagbi", write(tmp_path, "vars = x\n[F]\n# nothing\n")])
    assert code == 2 and "empty generator section" in err
    code, _, err = invoke(["member", str(PROBLEMS / "three_gens.txt")])
    assert code == 2 and "--poly" in err
    code, _, err = invoke(["member", str(PROBLEMS / "three_gens.txt"), "--poly", "x y"])
    assert code == 2 and "column 3" in err
    code, _, err = invoke(["sg", str(PROBLEMS / "three_gens.txt")])
    assert code == 2
    code, _, err = invoke(["sagbi", str(tmp_path / "missing.txt")])
    assert code == 2


def test_ideal_generator_outside_subalgebra(tmp_path):
    path = write(tmp_path, "vars = x, y\n[F]\nx^2\ny^2\n[G]\nx*y\n")
    code, _, err = invoke(["sg", path])
    assert code == 2 and "g1 = x*y is not in the subalgebra" in err


def test_iteration_cap_exit_3(tmp_path):
    path = write(tmp_path, "vars = x, y\nmax_passes = 2\n[F]\nx + y\nx*y\nx*y^2\n")
    code, out, _ = invoke(["sagbi", path])
    assert code == 3 and "status: IterationCapReached" in out
    code, out, _ = invoke(["sagbi", path, "--max-passes", "1"])
    assert code == 3 and "passes: 1" in out


def test_json_round_trip():
    code, out, _ = invoke(golden_args("sagbi_three_gens_json"))
    data = json.loads(out)
    ring = parse_problem(PROBLEMS.joinpath("three_gens.txt").read_text()).ring
    for text in data["basis"].values():
        assert format_poly(parse_polynomial(text, ring)) == text
    _, plain, _ = invoke(["sagbi", str(PROBLEMS / "three_gens.txt"), "--trail"])
    assert "\n".join(render_text(data)) + "\n" == plain


def test_rational_problem(tmp_path):
    path = write(tmp_path, "ring = rat\nvars = x\n[F]\n1/2*x^2\n")
    code, out, _ = invoke(["member", path, "--poly", "3*x^4 + 1"])
    assert code == 0 and "result: member" in out
    with pytest.raises(ProblemError):
        parse_problem("vars = x\n[F]\n1/2*x\n")


def test_parse_problem_settings():
    pf = parse_problem("ring = int\nvars = a, b\norder = lex\nmax_passes = 4\n[F]\na*b\n")
    assert pf.ring == PolyRing.make(["a", "b"], "lex") and pf.max_passes == 4
    for bad in ("vars = x, x\n[F]\nx\n", "vars = x\norder = weird\n[F]\nx\n",
                "vars = x\n[G]\nx\n", "[F]\nx\n", "vars = x\n[Q]\nx\n"):
        with pytest.raises(ProblemError):
            parse_problem(bad)


def test_byte_identical_across_processes():
    env = dict(os.environ)
    outputs = []
    for seed in ("1", "2"):
        env["PYTHONHASHSEED"] = seed
        proc = subprocess.run([sys.executable, "-m", "sagbi", *golden_args("syz_syzygies")],
                              capture_output=True, env=env, check=True)
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]
