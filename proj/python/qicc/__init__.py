"""Power allocation for over-the-air computation over a bosonic multiple-access channel."""

from ._core import (
    InfeasibleError,
    Scenario,
    ao_solve,
    full_mse,
    lmmse_coefficient,
    max_sum_rate,
    mse_gradient,
    mse_max,
    mse_min,
    pg_step,
    project_halfspace,
    rate_gap,
    reduced_mse,
    run_cli,
    simulate_mse,
    solve_gamma_max,
    solve_nsig,
    split_comm_powers,
    von_neumann_g,
)

__all__ = [
    "InfeasibleError",
    "Scenario",
    "ao_solve",
    "full_mse",
    "lmmse_coefficient",
    "max_sum_rate",
    "mse_gradient",
    "mse_max",
    "mse_min",
    "pg_step",
    "project_halfspace",
    "rate_gap",
    "reduced_mse",
    "run_cli",
    "simulate_mse",
    "solve_gamma_max",
    "solve_nsig",
    "split_comm_powers",
    "von_neumann_g",
]
