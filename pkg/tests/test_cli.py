import io


from memoryless.cli import run
from memoryless.core import Alphabet, Permutation
from memoryless.textio import format_permutation, parse_program
from memoryless.synthesis import program_to_perm


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_swap_demo():
    code, out, _ = call("swap-demo", "--q", "2", "--n", "2")
    assert code == 0
    assert out.splitlines()[-1] == "OK"
    assert "computes_swap: yes" in out


def test_diameter():
    code, out, _ = call("diameter", "--q", "2", "--n", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "diameter 5"
    assert "distance\tcount" in lines
    assert "5\t2304" in lines


def test_generators_lex_family():
    code, out, _ = call("generators", "--q", "3", "--n", "3", "--group", "alt", "--labels", "lex")
    assert code == 0
    assert "pi_3: (1,2,3)" in out
    assert out.splitlines()[-1] == "OK"


def test_generators_program_format_parses():
    code, out, _ = call("generators", "--q", "3", "--n", "2", "--format", "program")
    assert code == 0
    assert len(parse_program(out)) == 2


def test_unsupported_case_is_domain_error():
    code, _, err = call("generators", "--q", "2", "--n", "2")
    assert code == 1 and "error" in err


def test_usage_errors():
    assert call("nonsense")[0] == 2
    assert call("diameter", "--q", "1", "--n", "2")[0] == 2
    assert call("synthesize")[0] == 2
    assert call("optimal")[0] == 2


def test_synthesize_then_verify(tmp_path):
    a = Alphabet(3, 3)
    f = Permutation(a, list(reversed(range(27))))
    perm = tmp_path / "f.txt"
    perm.write_text(format_permutation(f))
    prog = tmp_path / "p.txt"
    assert call("synthesize", str(perm), "-o", str(prog))[0] == 0
    code, out, _ = call("verify", "--perm", str(perm), "--program", str(prog), "--require-bound")
    assert code == 0
    assert "computes: yes" in out and out.splitlines()[-1] == "OK"
    assert program_to_perm(parse_program(prog.read_text())) == f


def test_verify_failure(tmp_path):
    perm = tmp_path / "f.txt"
    perm.write_text("2 2\n0 2 1 3\n")
    prog = tmp_path / "p.txt"
    prog.write_text("2 2 0\n")
    code, out, _ = call("verify", "--perm", str(perm), "--program", str(prog))
    assert code == 1 and out.splitlines()[-1] == "FAIL"


def test_parse_error_reports_line(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n0 1 1 3\n")
    code, _, err = call("synthesize", str(bad))
    assert code == 1
    assert "line 2, column 5" in err


def test_missing_file():
    assert call("synthesize", "/nonexistent/file")[0] == 1


def test_optimal_swap():
    for q in ("2", "3"):
        code, out, _ = call("optimal", "--swap", "--q", q)
        assert code == 0
        assert out.splitlines()[0] == f"{q} 2 3"


def test_random_synthesis_is_deterministic():
    a = call("synthesize", "--random", "--q", "3", "--n", "3", "--seed", "7")
    b = call("synthesize", "--random", "--q", "3", "--n", "3", "--seed", "7")
    assert a == b and a[0] == 0


def test_gray_and_coxeter():
    code, out, _ = call("gray", "--q", "2", "--n", "3")
    assert [line.split("\t")[2] for line in out.splitlines()[1:]] == \
        ["000", "001", "011", "010", "110", "111", "101", "100"]
    code, out, _ = call("coxeter", "--q", "3", "--n", "2")
    assert code == 0 and "minimal: yes" in out and out.endswith("OK\n")


def test_lary_group_cli():
    code, out, _ = call("lary-group", "--q", "2", "--n", "3", "--l", "2")
    assert out == "group: AffineOverGF2\norder: 1344\n"
    assert call("lary-group", "--q", "2", "--n", "3", "--l", "4")[0] == 2


def test_internal_cli():
    code, out, _ = call("internal", "--q", "3", "--n", "2", "--cycles", "(1,2,3)(6,7)", "--labels", "gray")
    assert code == 0 and "computable: true" in out
    code, out, _ = call("internal", "--q", "2", "--n", "2", "--group", "alt")
    assert "computable: false" in out and "instruction_subgroup_order: 4" in out


def test_fastness_cli():
    code, out, _ = call("fastness", "--q", "3", "--n", "2", "--cycles", "(0,3,1)")
    assert code == 0
    assert "L_K: 2" in out and "L_J: 4" in out and "fast: false" in out


def test_conjugacy_cli():
    code, out, _ = call("conjugacy-check", "--q", "2", "--n", "2", "--samples", "10")
    assert code == 0 and "preserved: 10" in out
    code, _, err = call("conjugacy-check", "--q", "2", "--n", "2", "--g", "(1,2)", "--h", "(0,1)")
    assert code == 1 and "unary" in err


def test_complexity_cli(tmp_path):
    perm = tmp_path / "f.txt"
    perm.write_text("2 2\n0 2 1 3\n")
    code, out, _ = call("complexity", str(perm))
    assert out == "complexity 3\n"
    code, out, _ = call("complexity", "--q", "2", "--n", "2")
    assert "mean 11/6" in out


def test_cap_env(monkeypatch):
    monkeypatch.setenv("MEMORYLESS_CAP", "100")
    code, _, err = call("internal", "--q", "3", "--n", "2", "--group", "alt")
    assert code == 1 and "MEMORYLESS_CAP" in err


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "memoryless", "swap-demo", "--q", "3"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.endswith("OK\n")
