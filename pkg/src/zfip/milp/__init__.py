"""Exact integer-programming engine: model, rational simplex, branch-and-bound, MPS/LP I/O."""

from .external import ExternalSolverError, parse_solution_file, solve_external
from .model import (BUDGET_EXCEEDED, EQ, GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, Constraint,
                    LinearModel, ModelError, Solution, SolveStats, Variable)
from .mps import export_lp_format, export_mps, parse_mps
from .simplex import lagrangian_bound
from .solve import DEFAULT_TIME_LIMIT, solve_ip, solve_lp, verify_lp_certificate

__all__ = [
    "BUDGET_EXCEEDED", "EQ", "GE", "INFEASIBLE", "LE", "OPTIMAL", "UNBOUNDED",
    "Constraint", "LinearModel", "ModelError", "Solution", "SolveStats", "Variable",
    "DEFAULT_TIME_LIMIT", "solve_ip", "solve_lp", "verify_lp_certificate", "lagrangian_bound",
    "export_mps", "export_lp_format", "parse_mps",
    "ExternalSolverError", "parse_solution_file", "solve_external",
]
