"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import lassovar as lv


def test_pava_projects_onto_nonincreasing():
    assert lv.pava_nonincreasing([1.0, 2.0, 3.0]) == pytest.approx([2.0, 2.0, 2.0])
    assert lv.pava_nonincreasing([3.0, 1.0]) == pytest.approx([3.0, 1.0])


def test_prox_lasso_is_soft_threshold():
    assert lv.prox_lasso([3.0, -0.5], 1.0) == pytest.approx([2.0, 0.0])


def test_penalty_values():
    assert lv.penalty_value("lasso", [1.0, -2.0]) == 3.0
    assert lv.penalty_value("hierarchical", [3.0, 4.0], q_effective=1, p=2) == pytest.approx(9.0)
    # sign flip inside a block forces monotone padding
    assert lv.penalty_value("ordered", [1.0, -1.0], q_effective=1, p=2) == pytest.approx(4.0)


def test_ordered_prox_splits():
    out = lv.prox_ordered([3.0, 1.0], 0.5, q_effective=1, p=2)
    assert out["beta_plus"] == pytest.approx([2.5, 0.5])
    assert out["beta_minus"] == pytest.approx([0.0, 0.0])
    assert out["beta"] == pytest.approx([2.5, 0.5])


def test_lambda_max_and_bic():
    assert lv.bic(2.5, 7, 100) == pytest.approx(123.86526448933216)
    with pytest.raises(ValueError):
        lv.bic(0.0, 1, 10)


def test_solve_equation_objective_is_reasonable():
    y = [[0.4], [1.0], [0.1], [-0.8], [-0.3], [0.6], [0.2], [-0.5]]
    design = lv.build_design(y, p=2, h=1)
    result = lv.solve_equation(y, 0, lambda_=0.05, kind="lasso", p=2, h=1)
    assert result["converged"]
    # the zero vector is always feasible, so the optimum cannot exceed 0.5 ||y||^2
    yy = sum(float(v) ** 2 for row in design["Y"] for v in row)
    assert result["objective"] <= 0.5 * yy + 1e-12


def test_fit_path_reports_weights_and_lengths():
    import random

    rng = random.Random(7)
    y = [[rng.gauss(0.0, 1.0)] for _ in range(80)]
    path = lv.fit_path(y, p=4, h=1, kind="ordered", L=6)
    assert len(path["points"]) == 6
    assert math.isclose(sum(path["weights"]), 1.0, rel_tol=1e-9)
    assert 0 <= path["bic_argmin"] < 6
    lengths = path["weighted_lag_lengths"]
    assert 0.0 <= lengths[0][0] <= 4.0


def test_simulate_and_backtest_round_trip():
    sim = lv.simulate_var(T=70, coef=[[[0.5, 0.0], [0.1, 0.4]]], seed=11, mean_offset=[3.0, 3.0])
    assert len(sim) == 70 and len(sim[0]) == 2
    assert lv.companion_spectral_radius([[[0.5, 0.0], [0.1, 0.4]]]) == pytest.approx(0.5)

    report = lv.run_backtest(sim, horizons=[1, 2], p=3, L=4, threads=1)
    assert len(report["methods"]) == 16
    assert len(report["mafe"]) == 16
    assert len(report["mafe"][0]) == 2
    assert all(m > 0 for row in report["mafe"] for m in row)
    assert report["skipped_origins"] == 0


def test_explosive_system_is_rejected():
    with pytest.raises(ValueError):
        lv.simulate_var(T=10, coef=[[[1.2]]], seed=1)
