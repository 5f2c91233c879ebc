import math
from fractions import Fraction

import pytest
from pydantic import ValidationError

from lsvlab.errors import BudgetExceededError, PreconditionError, SchemaError
from lsvlab.harness import (
    Ensemble,
    ExperimentConfig,
    TailCell,
    TailCurve,
    calibrate_tail_constant,
    exact_singularity_frequency,
    run_tail_experiment,
    union_bound_report,
)
from lsvlab.harness.experiments import clopper_pearson_upper, halasz_corpus, reference_value


def test_experiment_config_validation():
    with pytest.raises(ValidationError):
        ExperimentConfig(model=Ensemble.ROW_REGULAR, n_list=[5])
    with pytest.raises(ValidationError):
        ExperimentConfig(eta_grid=[0.1, 0.01])
    with pytest.raises(ValidationError):
        ExperimentConfig(eta_grid=[])
    with pytest.raises(ValidationError):
        ExperimentConfig(eta_grid=[-0.1, 0.1])
    with pytest.raises(ValidationError):
        ExperimentConfig(n_list=[])
    with pytest.raises(ValidationError):
        ExperimentConfig(workers=0)


def test_edelman_scale():
    cfg = ExperimentConfig(model=Ensemble.GAUSSIAN, eta_grid=[0.1, 0.2], eta_scale="edelman")
    assert cfg.etas_for(4) == pytest.approx([0.05, 0.1])
    assert ExperimentConfig(eta_grid=[0.1]).etas_for(4) == [0.1]


def test_reference_values():
    assert reference_value(Ensemble.IID_RADEMACHER, 4, 0.01) == pytest.approx(0.08)
    assert reference_value(Ensemble.ROW_REGULAR, 4, 0.01) == pytest.approx(0.16)
    assert reference_value(Ensemble.GAUSSIAN, 4, 0.01) == pytest.approx(0.02)


def test_clopper_pearson_upper():
    # with no hits the bound has the closed form 1 - (1 - level)^(1/trials)
    assert clopper_pearson_upper(0, 100) == pytest.approx(1 - 0.05 ** (1 / 100))
    assert clopper_pearson_upper(10, 10) == 1.0
    assert clopper_pearson_upper(5, 100) > 0.05
    with pytest.raises(PreconditionError):
        clopper_pearson_upper(3, 2)
    with pytest.raises(PreconditionError):
        clopper_pearson_upper(0, 0)


@pytest.mark.parametrize(
    "n,expected",
    [(1, Fraction(0)), (2, Fraction(1, 2)), (3, Fraction(5, 8)), (4, Fraction(169, 256))],
)
def test_exact_singularity_of_sign_matrices(n, expected):
    assert exact_singularity_frequency(n, Ensemble.IID_RADEMACHER) == expected


def test_exact_singularity_of_row_regular_matrices():
    # two rows drawn from {(1, 0), (0, 1)}; singular exactly when they agree
    assert exact_singularity_frequency(2, Ensemble.ROW_REGULAR) == Fraction(1, 2)
    with pytest.raises(PreconditionError):
        exact_singularity_frequency(3, Ensemble.ROW_REGULAR)
    with pytest.raises(PreconditionError):
        exact_singularity_frequency(3, Ensemble.GAUSSIAN)
    with pytest.raises(BudgetExceededError):
        exact_singularity_frequency(6, Ensemble.IID_RADEMACHER, budget=1000)


def test_union_bound_report():
    assert union_bound_report(0.0, 10, 0.5) == float("-inf")
    assert union_bound_report(0.01, 10, 0.5) == pytest.approx(10 * math.log(0.5))
    with pytest.raises(PreconditionError):
        union_bound_report(-1.0, 10, 0.5)
    with pytest.raises(PreconditionError):
        union_bound_report(1.0, 10, 0.0)


def test_tail_experiment_counts_are_monotone(lab_env):
    cfg = ExperimentConfig(n_list=[4, 6], trials=60, eta_grid=[0.0, 0.1, 1.0, 10.0], seed=3, out="tail.csv")
    curve = run_tail_experiment(cfg)
    assert len(curve.cells) == 8
    for n in (4, 6):
        hits = [c.hits for c in curve.cells if c.n == n]
        assert hits == sorted(hits)
        # every 4x4 or 6x6 sign matrix has s_min <= ||M|| / sqrt(n) <= sqrt(n) < 10
        assert hits[-1] == 60
    assert (lab_env / "tail.csv").read_text().splitlines()[0] == "model,n,eta,trials,hits,p_hat,se,reference"


def test_tail_curve_csv_round_trip(lab_env):
    cfg = ExperimentConfig(n_list=[4], trials=30, eta_grid=[0.0, 0.5], seed=1, out=lab_env / "tail.csv")
    curve = run_tail_experiment(cfg)
    assert TailCurve.from_csv(lab_env / "tail.csv") == curve


def test_tail_curve_rejects_foreign_csv(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(SchemaError):
        TailCurve.from_csv(path)
    with pytest.raises(SchemaError):
        TailCurve.from_csv(tmp_path / "missing.csv")


def test_zero_hit_cells_carry_an_upper_bound(lab_env):
    cfg = ExperimentConfig(model=Ensemble.GAUSSIAN, n_list=[4], trials=40, eta_grid=[1e-12], seed=0)
    cell = run_tail_experiment(cfg).cells[0]
    assert cell.hits == 0
    assert cell.se == pytest.approx(clopper_pearson_upper(0, 40))


def _cell(n, eta, hits, p_hat, se, reference):
    return TailCell(model=Ensemble.IID_RADEMACHER, n=n, eta=eta, trials=100, hits=hits, p_hat=p_hat, se=se,
                    reference=reference)


def test_calibrate_tail_constant():
    curve = TailCurve(cells=[
        _cell(4, 0.0, 60, 0.6, 0.05, 0.0),
        _cell(4, 0.1, 0, 0.0, 0.03, 0.8),
        _cell(8, 0.01, 50, 0.5, 0.05, 0.1),
        _cell(8, 0.1, 70, 0.7, 0.05, 2.0),
    ])
    calibration = calibrate_tail_constant(curve)
    assert calibration.C == pytest.approx(3.5)
    assert calibration.worst == (8, 0.01)
    assert calibration.skipped_zero_reference == 1


def test_profile_sets_the_eta_floor():
    desk = ExperimentConfig(profile="desk")
    paper = ExperimentConfig(profile="paper")
    assert desk.eta_floor(16) == pytest.approx(2.0 ** -4)
    assert paper.eta_floor(16) > 0.49
    assert ExperimentConfig(model=Ensemble.GAUSSIAN, profile="paper").eta_floor(16) == 0.0


def test_calibration_leaves_out_cells_below_the_floor():
    curve = TailCurve(cells=[
        _cell(16, 0.01, 50, 0.5, 0.05, 0.64),
        _cell(16, 0.1, 70, 0.7, 0.05, 6.4),
    ])
    assert calibrate_tail_constant(curve).worst == (16, 0.01)
    desk = calibrate_tail_constant(curve, eta_floor=ExperimentConfig(profile="desk").eta_floor)
    assert desk.skipped_below_floor == 1
    assert desk.worst == (16, 0.1)
    paper = calibrate_tail_constant(curve, eta_floor=ExperimentConfig(profile="paper").eta_floor)
    assert paper.skipped_below_floor == 2
    assert paper.C == 0.0


def test_tail_cell_validates_probability():
    with pytest.raises(ValidationError):
        _cell(4, 0.1, 1, 1.5, 0.1, 1.0)


def test_halasz_corpus():
    corpus = halasz_corpus(100, 101, 6, seed=5, sparse_support=20)
    assert corpus == halasz_corpus(100, 101, 6, seed=5, sparse_support=20)
    assert len(corpus) == 6
    assert all(len(a) == 100 and all(0 <= x < 101 for x in a) for a in corpus)
    assert sum(1 for x in corpus[2] if x) == 20
    assert all(x for x in corpus[0])
