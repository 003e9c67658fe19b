"""Command-line surface: output records and exit codes."""
import json

import pytest
from click.testing import CliRunner

import run
from twolayer import create_cli
from twolayer.utils import read_field


@pytest.fixture(scope="module")
def cli():
    return create_cli()


@pytest.fixture
def invoke(cli):
    runner = CliRunner()

    def _invoke(*args, env=None):
        return runner.invoke(cli, list(args), env=env)
    return _invoke


def _value(line, key):
    """The number after ``key=`` in a record line."""
    for item in line.split():
        name, _, value = item.partition("=")
        if name == key:
            return float(value)
    raise KeyError(key)


class TestCatalog:

    def test_list(self, invoke):
        result = invoke("catalog", "list")
        assert result.exit_code == 0
        assert "rossby_classic: " in result.output
        assert "a12_whittaker [numeric]" in result.output

    def test_eval_writes_a_field(self, invoke, tmp_path):
        out = tmp_path / "psi1.txt"
        result = invoke("catalog", "eval", "--solution", "rossby_classic", "--grid", "16x16",
                        "--t", "0.25", "--out", str(out))
        assert result.exit_code == 0
        assert result.output.startswith("solution=rossby_classic component=psi1 grid=16x16 t=0.25 ")
        field, t = read_field(out)
        assert field.grid.label() == "16x16" and t == 0.25

    def test_verify_converges(self, invoke):
        result = invoke("verify", "--solution", "rossby_classic", "--grid", "32x32", "--dt", "0.02", "--convergence")
        assert result.exit_code == 0
        coarse, fine, ratio = result.output.strip().splitlines()
        assert coarse.startswith("solution=rossby_classic grid=32x32 ")
        assert fine.startswith("solution=rossby_classic grid=64x64 ")
        assert _value(ratio, "ratio") > 3.5

    def test_branch_error_exits_with_1(self, invoke):
        result = invoke("catalog", "eval", "--solution", "rossby_classic", "--params", "k=0,l=0")
        assert result.exit_code == 1

    @pytest.mark.parametrize("args", [
        ("catalog", "eval", "--solution", "rossby_quantum"),
        ("catalog", "eval", "--solution", "rossby_classic", "--grid", "12by12"),
        ("catalog", "eval", "--solution", "rossby_classic", "--params", "omega=1"),
    ])
    def test_usage_errors_exit_with_2(self, invoke, args):
        assert invoke(*args).exit_code == 2


class TestSimulate:

    def test_prints_diagnostics(self, invoke):
        result = invoke("simulate", "--solution", "rossby_classic", "--grid", "16x16", "--steps", "2", "--dt", "0.01")
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0] == "step,t,energy,enstrophy1,enstrophy2,circ_south,circ_north"
        assert [line.split(",")[0] for line in lines[1:]] == ["0", "2"]

    def test_output_directory(self, invoke, tmp_path):
        result = invoke("simulate", "--solution", "rossby_classic", "--grid", "16x16", "--steps", "2",
                        "--output-every", "1", "--output-dir", str(tmp_path))
        assert result.exit_code == 0
        assert (tmp_path / "diagnostics.csv").exists()
        assert sorted(p.name for p in tmp_path.glob("psi2_*.txt")) == [
            "psi2_000000.txt", "psi2_000001.txt", "psi2_000002.txt"]

    def test_channel_run(self, invoke):
        result = invoke("simulate", "--solution", "rossby_channel", "--params", "width=3.141592653589793",
                        "--grid", "32x17", "--topology", "channel", "--steps", "1", "--dt", "0.01",
                        env={"TWOLAYER_LY": "3.141592653589793"})
        assert result.exit_code == 0


class TestTransform:

    def test_image_still_solves_the_model(self, invoke):
        records = {}
        for grid, dt in (("32x32", "0.01"), ("64x64", "0.005")):
            result = invoke("transform", "--solution", "rossby_classic", "--f", "1/2 t", "--g", "t^2",
                            "--discrete", "layer_swap", "--grid", grid, "--dt", dt)
            assert result.exit_code == 0
            header, original, image = result.output.strip().splitlines()
            assert header.startswith("transform eps=(1,1,1)") and header.endswith("discrete=layer_swap")
            assert image.startswith("solution=rossby_classic~")
            records[grid] = image
        # the image residual is truncation error: it falls at second order
        assert _value(records["32x32"], "max_res") / _value(records["64x64"], "max_res") >= 3.5

    def test_signs_must_be_units(self, invoke):
        result = invoke("transform", "--solution", "rossby_classic", "--eps1", "2")
        assert result.exit_code == 2


class TestAlgebra:

    def test_commutator(self, invoke):
        result = invoke("algebra", "commutator", "Dt", "X(t^2)")
        assert result.output.strip() == "X(2*t)"

    def test_adjoint(self, invoke):
        result = invoke("algebra", "adjoint", "--by", "Z(t^3)", "--epsilon", "2", "Dt")
        assert result.output.strip() == "Dt + Z(6*t^2)"

    def test_subspaces(self, invoke):
        lines = invoke("algebra", "subspaces", "X(1)").output.strip().splitlines()
        assert "z: true" in lines and "n': false" in lines

    def test_closure(self, invoke):
        result = invoke("algebra", "closure", "--subalgebra", "A2_2", "--nu", "1", "--sigma", "2", "--kappa", "0")
        assert result.output.strip() == "closed: true; [e1,e2] = 2*e2"

    def test_mutated_closure(self, invoke):
        result = invoke("algebra", "closure", "--subalgebra", "A2_2", "--nu", "1", "--sigma", "2",
                        "--param", "z_degree=2")
        assert result.output.strip() == "closed: false; [e1,e2] = outside span"

    def test_closure_sweep(self, invoke):
        result = invoke("--seed", "3", "algebra", "closure", "--all", "--samples", "1")
        assert result.exit_code == 0
        assert all(": closed: true" in line for line in result.output.strip().splitlines())

    @pytest.mark.parametrize("args", [
        ("algebra", "closure"),
        ("algebra", "closure", "--subalgebra", "A2_2", "--param", "omega=1"),
        ("algebra", "commutator", "Dt", "sin(t)"),
    ])
    def test_usage_errors(self, invoke, args):
        assert invoke(*args).exit_code == 2


class TestBoundaries:

    def test_check_predicate(self, invoke):
        result = invoke("bvp", "check", "--setting", "periodic", "--f", "t^2")
        assert result.output.startswith("setting=periodic_channel violated (mode=predicate)")

    def test_check_rectangle(self, invoke):
        result = invoke("bvp", "check", "--setting", "limited", "--T0", "1", "--mode", "empirical")
        assert result.output.strip() == "setting=limited_rectangle preserved (mode=empirical)"

    def test_residual(self, invoke):
        result = invoke("bvp", "residual", "--setting", "periodic", "--solution", "rossby_channel",
                        "--params", "width=3.141592653589793")
        assert result.exit_code == 0
        assert result.output.startswith("solution=rossby_channel setting=periodic_channel grid=32x17 ")
        assert _value(result.output, "max_res") < 1e-9

    def test_infinite_width(self, invoke):
        result = invoke("bvp", "check", "--setting", "periodic", "--Y", "inf")
        assert result.exit_code == 2


class TestConfiguration:

    def test_config_file(self, invoke, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("nx = 16\nny = 8\n", encoding="utf-8")
        result = invoke("--config", str(path), "catalog", "eval", "--solution", "rossby_classic")
        assert " grid=16x8 " in result.output

    def test_environment(self, invoke):
        result = invoke("catalog", "eval", "--solution", "rossby_classic", env={"TWOLAYER_NX": "20"})
        assert " grid=20x64 " in result.output

    def test_unknown_config_key(self, invoke, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("resolution = high\n", encoding="utf-8")
        assert invoke("--config", str(path), "catalog", "list").exit_code == 2


class TestMain:

    def test_success(self, capsys):
        assert run.main(["algebra", "commutator", "Dy", "X(exp(2t))"]) == 0
        assert capsys.readouterr().out.strip() == "Z(-2*exp(2*t))"

    def test_exit_codes(self):
        assert run.main(["catalog", "eval", "--solution", "rossby_quantum"]) == 2
        assert run.main(["catalog", "eval", "--solution", "a21_exponential", "--params", "mu=-0.25"]) == 1


class TestJsonRecords:

    def test_residual_records(self, invoke):
        result = invoke("--json", "verify", "--solution", "rossby_classic", "--grid", "16x16", "--convergence")
        assert result.exit_code == 0
        coarse, fine, ratio = (json.loads(line) for line in result.output.strip().splitlines())
        assert coarse["solution"] == "rossby_classic" and coarse["grid"] == "16x16"
        assert fine["grid"] == "32x32"
        assert ratio["ratio"] == pytest.approx(coarse["max_res"] / fine["max_res"])

    def test_verdicts(self, invoke):
        result = invoke("--json", "bvp", "check", "--setting", "periodic", "--Y0", "0.5")
        record = json.loads(result.output)
        assert record["setting"] == "periodic_channel"
        assert record["status"] == "violated" and record["mode"] == "predicate"

    def test_algebra_output_stays_textual(self, invoke):
        assert invoke("--json", "algebra", "commutator", "Dt", "X(t^2)").output.strip() == "X(2*t)"
