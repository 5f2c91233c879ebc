from typer.testing import CliRunner

from lsvlab.cli.main import app
from lsvlab.core.domain import ModelTag
from lsvlab.core.storage import storage

runner = CliRunner()


def test_cli_version():
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert "lsvlab v" in result.stdout


def test_cli_sample_prints_spectrum(lab_env):
    result = runner.invoke(app, ["sample", "--n", "4", "--seed", "1"])
    assert result.exit_code == 0
    assert "IidRademacher" in result.stdout
    assert "s_min" in result.stdout
    assert "exactly singular" in result.stdout


def test_cli_sample_writes_matrix_and_base(lab_env):
    result = runner.invoke(app, [
        "sample", "--model", "BaseAssembled", "--n", "8", "--seed", "3",
        "--out", "q.txt", "--base-out", "base.txt", "--audit",
    ])
    assert result.exit_code == 0
    assert "Base audit" in result.stdout
    assert (lab_env / "base.txt").exists()
    q = storage.load_matrix("q.txt")
    assert q.model_tag == ModelTag.BASE_ASSEMBLED
    assert (q.entries.sum(axis=1) == 4).all()


def test_cli_sample_rejects_external_model(lab_env):
    result = runner.invoke(app, ["sample", "--model", "External", "--n", "4"])
    assert result.exit_code == 3
    assert "Error" in result.stdout


def test_cli_singularity_exact_fractions():
    result = runner.invoke(app, ["singularity", "--n", "2"])
    assert result.exit_code == 0
    assert "1/2" in result.stdout

    result = runner.invoke(app, ["singularity", "--n", "3"])
    assert result.exit_code == 0
    assert "5/8" in result.stdout


def test_cli_singularity_budget_exceeded():
    result = runner.invoke(app, ["singularity", "--n", "6", "--budget", "1000"])
    assert result.exit_code == 3
    assert "budget" in result.stdout


def test_cli_lcd_finds_witness(lab_env):
    vector = lab_env / "a.txt"
    vector.write_text("# a unit vector\n0.6\n0.8\n")
    result = runner.invoke(app, ["lcd", str(vector), "--gamma", "0.1", "--theta-max", "20"])
    assert result.exit_code == 0
    assert "Found" in result.stdout
    assert "witness" in result.stdout


def test_cli_lcd_requires_unit_vector(lab_env):
    vector = lab_env / "b.txt"
    vector.write_text("3\n4\n")
    result = runner.invoke(app, ["lcd", str(vector)])
    assert result.exit_code == 3

    result = runner.invoke(app, ["lcd", str(vector), "--normalize", "--theta-max", "20", "--eta", "1"])
    assert result.exit_code == 0
    assert "Found" in result.stdout
    assert "class" in result.stdout


def test_cli_lcd_rejects_malformed_file(lab_env):
    vector = lab_env / "c.txt"
    vector.write_text("not a number\n")
    result = runner.invoke(app, ["lcd", str(vector)])
    assert result.exit_code == 3


def test_cli_tails_then_plot(lab_env):
    result = runner.invoke(app, [
        "tails", "--n", "4", "--trials", "40", "--eta", "0", "--eta", "0.5", "--seed", "2", "--out", "tail.csv",
    ])
    assert result.exit_code == 0
    assert "Tail constant C" in result.stdout
    assert (lab_env / "tail.csv").exists()

    result = runner.invoke(app, ["plot", str(lab_env / "tail.csv"), str(lab_env / "tail.svg")])
    assert result.exit_code == 0
    assert (lab_env / "tail.svg").read_text().startswith("<?xml")


def test_cli_tails_profile_sets_the_fit_range(lab_env):
    args = ["tails", "--n", "4", "--trials", "20", "--eta", "0.3", "--eta", "0.6", "--seed", "1"]
    result = runner.invoke(app, args + ["--profile", "paper"])
    assert result.exit_code == 0
    assert "1 cell(s) below the paper eta floor" in result.stdout

    result = runner.invoke(app, args + ["--profile", "desk"])
    assert result.exit_code == 0
    assert "eta floor" not in result.stdout


def test_cli_tails_invalid_configuration(lab_env):
    result = runner.invoke(app, ["tails", "--model", "RowRegular", "--n", "5", "--trials", "10"])
    assert result.exit_code == 3
    assert "Invalid configuration" in result.stdout

    result = runner.invoke(app, ["tails", "--n", "4", "--eta", "0.5", "--eta", "0.1"])
    assert result.exit_code == 3


def test_cli_plot_missing_csv(lab_env):
    result = runner.invoke(app, ["plot", str(lab_env / "missing.csv"), str(lab_env / "out.svg")])
    assert result.exit_code == 3


def test_cli_halasz(lab_env):
    result = runner.invoke(app, [
        "halasz", "--n", "20", "--p", "11", "--size", "3", "--M", "0.2", "--support", "8", "--out", "halasz.json",
    ])
    assert result.exit_code == 0
    assert "C_min" in result.stdout
    assert (lab_env / "halasz.json").exists()


def test_cli_halasz_constraint_violation(lab_env):
    result = runner.invoke(app, ["halasz", "--n", "100", "--p", "101", "--size", "1", "--M", "2"])
    assert result.exit_code == 3


def test_cli_verify_list():
    result = runner.invoke(app, ["verify", "--list"])
    assert result.exit_code == 0
    assert "two-step" in result.stdout
    assert "tail-shape" in result.stdout


def test_cli_verify_suite_passes(lab_env):
    result = runner.invoke(app, ["verify", "two-step", "structure-rkstar", "--out", "run.json"])
    assert result.exit_code == 0
    assert "All" in result.stdout
    assert (lab_env / "run.json").exists()


def test_cli_verify_unknown_suite(lab_env):
    result = runner.invoke(app, ["verify", "no-such-suite"])
    assert result.exit_code == 3
    assert "unknown suite" in result.stdout


def test_cli_verify_reports_regressions(lab_env):
    # a frozen value far from anything the suite produces
    (lab_env / "calibration.json").write_text('{"halasz-C[quick]": 1000.0}\n')
    result = runner.invoke(app, ["verify", "halasz-calibration"])
    assert result.exit_code == 2
