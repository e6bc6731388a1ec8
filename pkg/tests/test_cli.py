import subprocess
import sys

import pytest

from gdinverse import QQ, format_matrix, parse_matrices, parse_matrix
from gdinverse.matrix import block_diag
from gdinverse.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def refpath(data_dir):
    return data_dir / "reference.txt"


def test_info_golden(capsys, refpath):
    code, out, _ = run(capsys, "info", refpath)
    assert code == 0
    assert out == "n 7\nindex 3\nranks 5 3 2\nnu 2 4 5\ndelta 0 1 1\n"


def test_ast_emits_four_matrices(capsys, refpath, ref):
    code, out, _ = run(capsys, "ast", refpath)
    assert code == 0
    P, AW, JU, Pinv = parse_matrices(out)
    assert P @ block_diag(QQ, AW, JU) @ Pinv == ref
    assert [line for line in out.splitlines() if line.startswith("#")] == ["# P", "# A_W", "# J_U", "# P_inv"]


def test_drazin_and_core_nilpotent(capsys, refpath, data):
    code, out, _ = run(capsys, "core-nilpotent", refpath)
    assert code == 0
    assert parse_matrices(out) == [data("reference_core.txt"), data("reference_nilpotent.txt")]
    code, out, _ = run(capsys, "drazin", refpath)
    assert code == 0 and parse_matrix(out).shape == (7, 7)


def test_shape_listing(capsys, refpath):
    code, out, _ = run(capsys, "shape", refpath)
    lines = out.splitlines()
    assert code == 0
    assert lines[:3] == ["chains 2 3", "alpha_slots 10", "lambda_slots 6"]
    assert lines[5] == "block 1 1 : alpha 1,1 2,1 | lambda 2,2"
    assert len(lines) == 5 + 4


def test_verify_exit_codes(capsys, refpath, data_dir):
    code, out, _ = run(capsys, "verify", refpath, "--x", data_dir / "reference_gd_corrected.txt")
    assert code == 0
    assert "AXA=A true" in out and "false" not in out
    code, out, _ = run(capsys, "verify", refpath, "--x", data_dir / "reference_gd_given.txt")
    assert code == 2
    assert "AXA=A false" in out


def test_count(capsys, refpath):
    assert run(capsys, "count", refpath, "--q", 2)[:2] == (0, "65536\n")
    assert run(capsys, "count", refpath, "--q", 4)[0] == 1


def test_sample_build_extract_verify(capsys, refpath, tmp_path):
    params = tmp_path / "p.txt"
    xfile = tmp_path / "x.txt"
    code, sampled, _ = run(capsys, "gd-sample", refpath, "--seed", 42, "--params-out", params)
    assert code == 0
    code, built, _ = run(capsys, "gd-build", refpath, "--params", params, "-o", xfile)
    assert code == 0 and built == ""
    assert xfile.read_text() == sampled
    assert run(capsys, "verify", refpath, "--x", xfile)[0] == 0
    code, extracted, _ = run(capsys, "gd-extract", refpath, "--x", xfile)
    assert code == 0 and extracted == params.read_text()
    assert run(capsys, "gd-sample", refpath, "--seed", 42)[1] == sampled


def test_params_in_noncanonical_form(capsys, refpath, tmp_path):
    run(capsys, "gd-sample", refpath, "--seed", 1, "--params-out", tmp_path / "p.txt")
    canonical = (tmp_path / "p.txt").read_text()
    # same values written as unreduced fractions
    lines = canonical.splitlines()
    lines[1] = " ".join(t if t in ("block", "1", ":", "|") else f"{int(t) * 2}/2" for t in lines[1].split())
    (tmp_path / "q.txt").write_text("# hand edited\n" + "\n".join(lines) + "\n")
    run(capsys, "gd-build", refpath, "--params", tmp_path / "q.txt", "-o", tmp_path / "x.txt")
    code, out, _ = run(capsys, "gd-extract", refpath, "--x", tmp_path / "x.txt")
    assert code == 0 and out == canonical


def test_extract_rejects_non_inverse(capsys, refpath, data_dir):
    code, out, err = run(capsys, "gd-extract", refpath, "--x", data_dir / "reference_gd_given.txt")
    assert code == 2 and out == "" and "not a G-Drazin inverse" in err


def test_parse_error_diagnostic(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("field Q\nrows 2 cols 2\n1 2\n3 4/0\n")
    code, out, err = run(capsys, "info", bad)
    assert code == 1 and out == ""
    assert f"{bad}:4:3:" in err
    params = tmp_path / "p.txt"
    params.write_text("shape 2 3\nblock 1 1 : 0 0\n")
    good = tmp_path / "a.txt"
    good.write_text("rows 1 cols 1\n0\n")
    code, _, err = run(capsys, "gd-build", good, "--params", params)
    assert code == 1


def test_missing_file_and_non_square(capsys, tmp_path):
    assert run(capsys, "info", tmp_path / "nope.txt")[0] == 1
    rect = tmp_path / "r.txt"
    rect.write_text("rows 1 cols 2\n1 2\n")
    code, _, err = run(capsys, "drazin", rect)
    assert code == 1 and "square" in err


def test_field_override(capsys, tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("rows 2 cols 2\n2 0\n0 0\n")
    code, out, _ = run(capsys, "drazin", f, "--field", "GF3")
    assert code == 0 and parse_matrix(out) == parse_matrix("field GF 3\nrows 2 cols 2\n2 0\n0 0\n")


def test_certify(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "--n", 2, "--q", 2)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 17
    assert all(line.startswith("PASS ") for line in lines[:-1])
    assert lines[-1] == "SUMMARY PASS 16/16"
    code, out, err = run(capsys, "certify", "--n", 4, "--budget", 1000)
    assert code == 3 and out.splitlines()[-1] == "SUMMARY BUDGET_EXCEEDED"
    m = tmp_path / "m.txt"
    m.write_text("field GF 3\nrows 2 cols 2\n0 1\n0 0\n")
    code, out, _ = run(capsys, "certify", "--matrix", m)
    assert code == 0 and out.startswith("PASS m q=3 n=2 index=2 gd=27 formula=27")


def test_emitted_matrices_reparse(capsys, refpath):
    for cmd in ("ast", "drazin", "core-nilpotent"):
        out = run(capsys, cmd, refpath)[1]
        mats = parse_matrices(out)
        untitled = "".join(line + "\n" for line in out.splitlines() if not line.startswith("#"))
        assert untitled == "".join(format_matrix(M) for M in mats)


def test_module_entry_point(refpath):
    res = subprocess.run([sys.executable, "-m", "gdinverse", "count", str(refpath), "--q", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == f"{3**16}\n"
