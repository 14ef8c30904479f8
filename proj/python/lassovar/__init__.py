"""Sparse AR/VAR estimation and forecasting for log-realized-variance panels."""

from ._core import (
    bic,
    build_design,
    companion_spectral_radius,
    fit_path,
    forecast_row,
    lambda_max,
    minimal_split,
    pava_nonincreasing,
    penalty_value,
    prox_hierarchical,
    prox_lasso,
    prox_ordered,
    run_backtest,
    simulate_var,
    solve_equation,
)

__all__ = [
    "bic",
    "build_design",
    "companion_spectral_radius",
    "fit_path",
    "forecast_row",
    "lambda_max",
    "minimal_split",
    "pava_nonincreasing",
    "penalty_value",
    "prox_hierarchical",
    "prox_lasso",
    "prox_ordered",
    "run_backtest",
    "simulate_var",
    "solve_equation",
]
