import json
import subprocess
import sys

import pytest

from mzvassoc.cli import main
from mzvassoc.scalars import render_scalar, scalar_from_terms


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_reduce_golden(capsys):
    code, out, _ = run_cli(capsys, "mzv", "reduce", "4,2")
    assert code == 0
    assert out == "ζ(3)^2 - 32/105 ζ(2)^3\n"


def test_reduce_trivial(capsys):
    code, out, _ = run_cli(capsys, "mzv", "reduce", "2")
    assert (code, out) == (0, "ζ(2)\n")


def test_shuffle_and_stuffle(capsys):
    code, out, _ = run_cli(capsys, "mzv", "shuffle", "xy", "xy")
    assert (code, out) == (0, "4 x^2y^2 + 2 xyxy\n")
    code, out, _ = run_cli(capsys, "mzv", "stuffle", "2,3", "5")
    assert code == 0
    assert out == "(2,8) + (7,3) + (2,3,5) + (2,5,3) + (5,2,3)\n"


def test_coeff_goldens(capsys):
    code, out, _ = run_cli(capsys, "assoc", "coeff", "--which", "half",
                           "--word", "x^2yx^4y")
    assert (code, out) == (0, "(2ζ(3,5)-7ζ(3)ζ(5))/(512π^8)\n")
    code, out, _ = run_cli(capsys, "assoc", "coeff", "--which", "at",
                           "--word", "x^2yx^4y")
    assert (code, out) == (0, "(2048ζ(3,5)-6293ζ(3)ζ(5))/(524288π^8)\n")
    code, out, _ = run_cli(capsys, "assoc", "coeff", "--which", "kz", "--word", "xy")
    assert (code, out) == (0, "1/24\n")
    code, out, _ = run_cli(capsys, "assoc", "coeff", "--which", "kz", "--word", "xy",
                           "--style", "two_pi_i")
    assert (code, out) == (0, "-ζ(2)/(2πi)^2\n")


def test_json_output_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "assoc", "coeff", "--which", "half",
                           "--word", "x^2yx^4y", "--json")
    assert code == 0
    record = json.loads(out)
    scalar = scalar_from_terms(record["terms"])
    assert render_scalar(scalar, "pi_power") == record["rendered"]
    assert record["family"] == "half"
    assert json.loads(json.dumps(record)) == record


def test_integrals_golden_line(capsys):
    code, out, _ = run_cli(capsys, "at", "integrals", "--n", "2")
    assert code == 0
    assert "J2(2,1) = 1199/154828800" in out.splitlines()


def test_at_solve_output(capsys):
    code, out, _ = run_cli(capsys, "at", "solve", "--n", "1")
    assert code == 0
    assert out.splitlines() == ["c_2 = 60ζ(3)/(2πi)^3", "c_(0,1) = 60ζ(3)/(2πi)^3"]


def test_usage_exit_codes(capsys):
    code, _, err = run_cli(capsys, "mzv", "reduce", "x^0y")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "at", "solve", "--n", "9")
    assert code == 2
    code, _, err = run_cli(capsys, "at", "solve", "--n", "4")
    assert code == 2 and "extended" in err
    code, _, err = run_cli(capsys, "assoc", "coeff", "--which", "kz",
                           "--word", "x^9y")
    assert code == 2


def test_argparse_usage_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["mzv", "bogus-subcommand"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["assoc", "coeff", "--which", "unknown", "--word", "xy"])
    assert info.value.code == 2


def test_verify_theorems_exit_code(capsys):
    code, out, _ = run_cli(capsys, "assoc", "verify-theorems")
    assert code == 0
    assert "all checks passed" in out
    assert out.count("PASS") >= 9 and "FAIL" not in out


def test_table_output_deterministic(capsys):
    code, first, _ = run_cli(capsys, "assoc", "table", "--which", "half",
                             "--max-len", "4")
    assert code == 0
    code, second, _ = run_cli(capsys, "assoc", "table", "--which", "half",
                              "--max-len", "4")
    assert first == second
    assert "x^2y: 0" in first


@pytest.mark.parametrize("argv", [["mzv", "reduce", "4,2"],
                                  ["at", "integrals", "--n", "1"]])
def test_subprocess_byte_determinism(argv):
    """Two fresh interpreter runs produce byte-identical stdout."""
    runs = [subprocess.run([sys.executable, "-m", "mzvassoc", *argv],
                           capture_output=True, timeout=300) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stdout


def test_math_failure_exit_code(capsys, monkeypatch):
    import sys as _sys

    import mzvassoc.service.app  # noqa: F401

    from mzvassoc.errors import RankDeficientError
    from mzvassoc.words import Composition

    app_module = _sys.modules["mzvassoc.service.app"]

    def exploding(*args, **kwargs):
        raise RankDeficientError(8, [Composition((6, 2))])

    monkeypatch.setattr(app_module, "build_reduction_table", exploding)
    code, _, err = run_cli(capsys, "mzv", "check-table", "--max-weight", "8")
    assert code == 3
    assert "unreduced: (6,2)" in err
