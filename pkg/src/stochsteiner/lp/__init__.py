"""LP/MIP layer: sparse models, simplex and HiGHS backends, branch-and-cut."""

from .bnb import BranchNode, MipPoint, most_fractional, solve_mip
from .model import (BOUND_TOL, FEAS_TOL, INT_TOL, OBJ_TOL, LpModel, LpPoint, Row,
                    SolveReport)
from .session import BACKENDS, DEFAULT_BACKEND, add_row, open_session, solve_lp
from .simplex import simplex_solve

__all__ = [
    "BACKENDS", "BOUND_TOL", "BranchNode", "DEFAULT_BACKEND", "FEAS_TOL", "INT_TOL",
    "LpModel", "LpPoint", "MipPoint", "OBJ_TOL", "Row", "SolveReport", "add_row",
    "most_fractional", "open_session", "simplex_solve", "solve_lp", "solve_mip",
]
