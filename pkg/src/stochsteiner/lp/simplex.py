"""Bounded-variable primal revised simplex.

Rows ``a x (>=,<=,=) b`` become ``a x - s = 0`` with the slack ``s`` carrying
the row bounds, so every variable is simply boxed. Phase one prices a set of
artificials; phase two keeps them fixed at zero. Pricing is Dantzig
(most-negative reduced cost) and switches to Bland's rule after a run of
degenerate pivots.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as la

from .model import LpModel, LpPoint

DUAL_TOL = 1e-9
PRIMAL_TOL = 1e-9
PIVOT_TOL = 1e-9
DEGENERATE_RUN = 50


class _Tableau:
    def __init__(self, model: LpModel, lb, ub):
        n, m = model.num_vars, model.num_rows
        self.n, self.m = n, m
        A = np.zeros((m, n))
        lo = np.full(m, -np.inf)
        hi = np.full(m, np.inf)
        for i, r in enumerate(model.rows):
            for j, v in zip(r.index, r.value):
                A[i, j] += v
            if r.sense in (">=", "="):
                lo[i] = r.rhs
            if r.sense in ("<=", "="):
                hi[i] = r.rhs
        x = np.where(np.isfinite(lb), lb, np.where(np.isfinite(ub), ub, 0.0))
        act = A @ x
        s0 = np.clip(act, lo, hi)
        s0 = np.where(np.isfinite(s0), s0, act)
        resid = act - s0
        sign = np.where(resid >= 0, -1.0, 1.0)
        # columns: structurals | slacks (-I) | artificials (diag(sign))
        self.M = np.hstack([A, -np.eye(m), np.diag(sign)])
        self.lb = np.concatenate([lb, lo, np.zeros(m)])
        self.ub = np.concatenate([ub, hi, np.full(m, np.inf)])
        self.x = np.concatenate([x, s0, np.abs(resid)])
        basis = []
        for i in range(m):
            if abs(resid[i]) <= PRIMAL_TOL:
                basis.append(n + i)  # slack basic; artificial unused
                self.x[n + m + i] = 0.0
                self.ub[n + m + i] = 0.0
            else:
                basis.append(n + m + i)
        self.basis = basis
        self.is_basic = np.zeros(n + 2 * m, dtype=bool)
        self.is_basic[basis] = True

    def refresh(self):
        B = self.M[:, self.basis]
        self.lu = la.lu_factor(B, check_finite=False)
        nonbasic = ~self.is_basic
        rhs = -self.M[:, nonbasic] @ self.x[nonbasic]
        self.x[self.basis] = la.lu_solve(self.lu, rhs, check_finite=False)


def _run(t: _Tableau, cost: np.ndarray, budget: list[int]) -> str:
    degenerate = 0
    while True:
        if budget[0] <= 0:
            return "iteration_limit"
        t.refresh()
        y = la.lu_solve(t.lu, cost[t.basis], trans=1, check_finite=False)
        d = cost - t.M.T @ y
        at_lb = t.x <= t.lb + PRIMAL_TOL
        at_ub = t.x >= t.ub - PRIMAL_TOL
        fixed = t.ub - t.lb <= PRIMAL_TOL
        can_up = ~t.is_basic & ~fixed & ~at_ub & (d < -DUAL_TOL)
        can_down = ~t.is_basic & ~fixed & ~at_lb & (d > DUAL_TOL)
        eligible = np.flatnonzero(can_up | can_down)
        if eligible.size == 0:
            return "optimal"
        if degenerate >= DEGENERATE_RUN:
            q = int(eligible[0])
        else:
            q = int(eligible[np.argmax(np.abs(d[eligible]))])
        direction = 1.0 if d[q] < 0 else -1.0
        alpha = la.lu_solve(t.lu, t.M[:, q], check_finite=False)
        delta = -direction * alpha  # change of x_B per unit step
        step = t.ub[q] - t.lb[q]
        leave = -1
        leave_at = None
        xb = t.x[t.basis]
        lbb = t.lb[t.basis]
        ubb = t.ub[t.basis]
        best_piv = 0.0
        for i in range(t.m):
            di = delta[i]
            if di < -PIVOT_TOL and np.isfinite(lbb[i]):
                ratio = max(0.0, (xb[i] - lbb[i]) / -di)
                bound = lbb[i]
            elif di > PIVOT_TOL and np.isfinite(ubb[i]):
                ratio = max(0.0, (ubb[i] - xb[i]) / di)
                bound = ubb[i]
            else:
                continue
            if ratio < step - 1e-12:
                step, leave, leave_at, best_piv = ratio, i, bound, abs(di)
            elif abs(ratio - step) <= 1e-12 and leave >= 0:
                if degenerate >= DEGENERATE_RUN:
                    if t.basis[i] < t.basis[leave]:
                        leave, leave_at, best_piv = i, bound, abs(di)
                elif abs(di) > best_piv:
                    leave, leave_at, best_piv = i, bound, abs(di)
        if not np.isfinite(step):
            return "unbounded"
        budget[0] -= 1
        degenerate = degenerate + 1 if step <= 1e-12 else 0
        t.x[q] += direction * step
        t.x[t.basis] = xb + delta * step
        if leave < 0:
            continue  # bound flip
        out = t.basis[leave]
        t.x[out] = leave_at
        t.is_basic[out] = False
        t.is_basic[q] = True
        t.basis[leave] = q


def simplex_solve(model: LpModel, lb=None, ub=None, iteration_limit: int | None = None) -> LpPoint:
    n, m = model.num_vars, model.num_rows
    lb = np.asarray(model.lb if lb is None else lb, dtype=float)
    ub = np.asarray(model.ub if ub is None else ub, dtype=float)
    c = np.asarray(model.obj, dtype=float)
    if np.any(lb > ub + PRIMAL_TOL):
        return LpPoint(None, float("nan"), "infeasible")
    limit = iteration_limit if iteration_limit is not None else 100 * (n + m + 1)
    if m == 0:
        if np.any((c < 0) & ~np.isfinite(ub)) or np.any((c > 0) & ~np.isfinite(lb)):
            return LpPoint(None, float("nan"), "unbounded")
        x = np.where(c < 0, ub, np.where(np.isfinite(lb), lb, np.where(np.isfinite(ub), ub, 0.0)))
        return LpPoint(x, float(c @ x), "optimal")
    t = _Tableau(model, lb, ub)
    budget = [limit]
    phase1 = np.zeros(n + 2 * m)
    phase1[n + m:] = 1.0
    status = _run(t, phase1, budget)
    if status == "iteration_limit":
        return LpPoint(None, float("nan"), status, limit - budget[0])
    if float(np.sum(t.x[n + m:])) > 1e-7:
        return LpPoint(None, float("nan"), "infeasible", limit - budget[0])
    t.x[n + m:] = 0.0
    t.ub[n + m:] = 0.0
    cost = np.concatenate([c, np.zeros(2 * m)])
    status = _run(t, cost, budget)
    its = limit - budget[0]
    if status != "optimal":
        return LpPoint(None, float("nan"), status, its)
    t.refresh()
    x = np.clip(t.x[:n], lb, ub)
    return LpPoint(x, float(c @ x), "optimal", its)
