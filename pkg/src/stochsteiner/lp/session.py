"""Solver sessions: a model bound to a backend, re-solved as rows accumulate.

A session remembers how many model rows it has already pushed to the backend,
so cutting-plane loops and branch-and-bound only ship new rows and new column
bounds between solves (HiGHS then warm-starts from the previous basis).
"""

from __future__ import annotations

import os

import numpy as np

from .model import LpModel, LpPoint
from .simplex import simplex_solve

DEFAULT_BACKEND = os.environ.get("STOCHSTEINER_LP_BACKEND", "highs")
BACKENDS = ("highs", "simplex")


class SimplexSession:
    def __init__(self, model: LpModel):
        self.model = model

    def solve(self, lb=None, ub=None) -> LpPoint:
        return simplex_solve(self.model, lb, ub)


class HighsSession:
    def __init__(self, model: LpModel):
        import highspy

        self._hs = highspy
        self.model = model
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.setOptionValue("presolve", "off")
        h.setOptionValue("solver", "simplex")
        h.setOptionValue("primal_feasibility_tolerance", 1e-9)
        h.setOptionValue("dual_feasibility_tolerance", 1e-9)
        h.setOptionValue("threads", 1)
        self.h = h
        self.inf = highspy.kHighsInf
        n = model.num_vars
        lb = np.maximum(np.asarray(model.lb, dtype=float), -self.inf)
        ub = np.minimum(np.asarray(model.ub, dtype=float), self.inf)
        h.addVars(n, lb, ub)
        self._cols = np.arange(n, dtype=np.int32)
        self._synced = 0

    def _sync_rows(self):
        rows = self.model.rows[self._synced:]
        if not rows:
            return
        lo = np.empty(len(rows))
        hi = np.empty(len(rows))
        starts, idx, val = [], [], []
        for k, r in enumerate(rows):
            starts.append(len(idx))
            idx.extend(r.index)
            val.extend(r.value)
            lo[k] = r.rhs if r.sense in (">=", "=") else -self.inf
            hi[k] = r.rhs if r.sense in ("<=", "=") else self.inf
        self.h.addRows(len(rows), lo, hi, len(idx), np.asarray(starts, dtype=np.int32),
                       np.asarray(idx, dtype=np.int32), np.asarray(val, dtype=float))
        self._synced = len(self.model.rows)

    def solve(self, lb=None, ub=None) -> LpPoint:
        m = self.model
        n = m.num_vars
        self._sync_rows()
        h = self.h
        lb = np.asarray(m.lb if lb is None else lb, dtype=float)
        ub = np.asarray(m.ub if ub is None else ub, dtype=float)
        if np.any(lb > ub + 1e-9):
            return LpPoint(None, float("nan"), "infeasible")
        h.changeColsBounds(n, self._cols, np.maximum(lb, -self.inf), np.minimum(ub, self.inf))
        h.changeColsCost(n, self._cols, np.asarray(m.obj, dtype=float))
        h.setOptionValue("simplex_iteration_limit", int(100 * (n + m.num_rows + 1)))
        h.run()
        status = h.getModelStatus()
        S = self._hs.HighsModelStatus
        its = int(h.getInfo().simplex_iteration_count)
        if status == S.kOptimal:
            x = np.clip(np.asarray(h.getSolution().col_value, dtype=float), lb, ub)
            return LpPoint(x, float(np.dot(m.obj, x)), "optimal", its)
        if status == S.kModelEmpty:
            x = np.where(np.asarray(m.obj) < 0, ub, lb)
            return LpPoint(x, float(np.dot(m.obj, x)), "optimal", its)
        if status == S.kInfeasible:
            return LpPoint(None, float("nan"), "infeasible", its)
        if status == S.kUnbounded:
            return LpPoint(None, float("nan"), "unbounded", its)
        if status == S.kUnboundedOrInfeasible:
            return self._disambiguate(lb, ub, its)
        if status == S.kIterationLimit:
            return LpPoint(None, float("nan"), "iteration_limit", its)
        raise RuntimeError(f"HiGHS returned {h.modelStatusToString(status)}")

    def _disambiguate(self, lb, ub, its) -> LpPoint:
        point = simplex_solve(self.model, lb, ub)
        point.iterations += its
        return point


def open_session(model: LpModel, backend: str | None = None):
    backend = backend or DEFAULT_BACKEND
    if backend == "highs":
        return HighsSession(model)
    if backend == "simplex":
        return SimplexSession(model)
    raise ValueError(f"unknown LP backend {backend!r}; choose from {BACKENDS}")


def solve_lp(model: LpModel, backend: str | None = None) -> LpPoint:
    """Optimal basic solution of the continuous relaxation (integrality ignored)."""
    return open_session(model, backend).solve()


def add_row(model: LpModel, row) -> None:
    model.add_row(row)
