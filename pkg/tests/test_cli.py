from fractions import Fraction as F

from conftest import FIXTURES
from hcmu import serialization as ser
from hcmu.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_calabi(capsys):
    code, out, _ = run(capsys, "validate", str(FIXTURES / "calabi.json"))
    assert code == 0
    assert "R = 2/3" in out


def test_check_nonempty(capsys):
    code, out, _ = run(capsys, "check", "--genus", "0", "--angles", "2,2,2")
    assert code == 0
    assert out.strip() == "nonempty (case A.1)"


def test_check_empty_exit_one(capsys):
    code, out, _ = run(capsys, "check", "--genus", "0", "--angles", "3/2,3/2")
    assert code == 1
    assert out.strip() == "empty"


def test_check_refined(capsys):
    code, out, _ = run(
        capsys, "check", "--genus", "0", "--angles", "3,0", "--saddles", "1"
    )
    assert code == 0
    assert out.strip() == "nonempty (case B)"


def test_one_cone_divisible_message(capsys):
    code, out, _ = run(capsys, "one-cone", "--genus", "0", "-p", "4", "-q", "2")
    assert code == 1
    assert out.strip() == "inadmissible: q divides p"


def test_dim_case_b(capsys):
    code, out, _ = run(capsys, "dim", "--genus", "1", "--angles", "4,0")
    assert code == 0
    assert out.strip() == "4"


def test_dim_empty(capsys):
    code, out, _ = run(capsys, "dim", "--genus", "3", "--angles", "3,3")
    assert code == 1
    assert out.strip() == "empty"


def test_build_writes_valid_file(capsys, tmp_path):
    target = tmp_path / "s.json"
    code, _, _ = run(
        capsys, "build", "--genus", "0", "--angles", "2,3", "--saddles", "1",
        "-o", str(target),
    )
    assert code == 0
    ds = ser.load(target)
    assert ds.angulation.genus == 0


def test_build_empty_space(capsys, tmp_path):
    code, _, err = run(
        capsys, "build", "--genus", "1", "--angles", "2", "--saddles", "1",
        "-o", str(tmp_path / "x.json"),
    )
    assert code == 1
    assert "infeasible" in err


def test_ratios_output(capsys):
    code, out, _ = run(
        capsys, "ratios", "--genus", "0", "--angles", "2,2,2", "--saddles", "1,2,3"
    )
    assert code == 0
    assert out.splitlines() == ["R=2/3 m+=3 m-=2", "R=1/4 m+=4 m-=1"]


def test_solve_kernel_dimension(capsys):
    code, out, _ = run(capsys, "solve", str(FIXTURES / "calabi.json"))
    assert code == 0
    assert "kernel dimension: 2" in out
    assert "positive witness:" in out


def test_profile_csv(capsys, tmp_path):
    target = tmp_path / "p.csv"
    code, _, _ = run(
        capsys, "profile", "--k0", "2", "--ratio", "2/3", "--samples", "64",
        "-o", str(target),
    )
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "v,s,K,h"
    assert len(lines) == 65


def test_twist_roundtrip(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, _, _ = run(
        capsys, "twist", str(FIXTURES / "two_level.json"),
        "--level", "1/2", "--circle", "0", "--psi", "1/5", "-o", str(target),
    )
    assert code == 0
    ds = ser.load(target)
    assert ds.ratio == F(1, 2)


def test_twist_non_generic(capsys, tmp_path):
    code, out, _ = run(
        capsys, "twist", str(FIXTURES / "two_level.json"),
        "--level", "1/2", "--circle", "0", "--psi", "3/2",
        "-o", str(tmp_path / "t.json"),
    )
    assert code == 1
    assert "non-generic" in out


def test_split_command(capsys, tmp_path):
    src = tmp_path / "s.json"
    run(capsys, "build", "--genus", "0", "--angles", "2,3", "--saddles", "1",
        "-o", str(src))
    ds = ser.load(src)
    v = next(
        v for v in range(ds.angulation.num_vertices)
        if ds.angulation.colors[v] == "black" and ds.vertex_angle(v) == 3
    )
    out_path = tmp_path / "after.json"
    code, _, _ = run(
        capsys, "split", str(src), "--vertex", str(v),
        "--offset", "1/3", "--level", "3/4", "-o", str(out_path),
    )
    assert code == 0
    after = ser.load(out_path)
    assert after.angulation.num_faces == ds.angulation.num_faces + 1


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", str(FIXTURES / "calabi.json"))
    assert code == 0
    assert out.startswith("graph surface {")


def test_deterministic_output(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        run(capsys, "build", "--genus", "1", "--angles", "4", "--saddles", "1",
            "-o", str(target))
    assert a.read_bytes() == b.read_bytes()


def test_usage_error_exit_two(capsys):
    assert main(["check", "--genus", "0"]) == 2  # missing --angles
    code, _, err = run(capsys, "validate", "/nonexistent/path.json")
    assert code == 2


def test_bad_angles_exit_two(capsys):
    code, _, err = run(capsys, "check", "--genus", "0", "--angles", "2,1")
    assert code == 2
    assert "error" in err
