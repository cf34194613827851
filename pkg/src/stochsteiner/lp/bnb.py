"""Branch-and-cut: best-bound search, most-fractional branching."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .model import INT_TOL, OBJ_TOL, LpModel, LpPoint, Row
from .session import open_session

MAX_ROUNDS_PER_NODE = 10000


@dataclass
class BranchNode:
    bound: float
    lb: np.ndarray
    ub: np.ndarray
    depth: int = 0
    var: int = -1


@dataclass
class MipPoint(LpPoint):
    nodes: int = 0
    rounds: int = 0
    cuts_added: int = 0
    best_bound: float = float("nan")


def most_fractional(x: np.ndarray, candidates: np.ndarray) -> int:
    """Index of the candidate farthest from integrality; -1 if all integral."""
    if candidates.size == 0:
        return -1
    vals = x[candidates]
    frac = np.minimum(vals - np.floor(vals), np.ceil(vals) - vals)
    best = int(np.argmax(frac))  # first maximum = lowest index on ties
    if frac[best] <= INT_TOL:
        return -1
    return int(candidates[best])


def _snap(x: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    x = x.copy()
    x[candidates] = np.round(x[candidates])
    return x


def solve_mip(model: LpModel, separator: Optional[Callable[[np.ndarray], Sequence[Row]]] = None,
              integrality_mask=None, node_limit: int = 100000, backend: str | None = None,
              session=None) -> MipPoint:
    """Optimum over points integral on ``integrality_mask`` that satisfy every row
    the model holds or the separator can produce.

    ``integrality_mask`` is a boolean vector or an index list; it defaults to
    the model's integer flags. Rows returned by ``separator`` are appended to
    ``model`` (they must be globally valid).
    """
    n = model.num_vars
    if integrality_mask is None:
        mask = np.asarray(model.integer, dtype=bool)
    else:
        mask = np.zeros(n, dtype=bool)
        arr = np.asarray(integrality_mask)
        if arr.dtype == bool:
            mask[:] = arr
        else:
            mask[arr.astype(int)] = True
    candidates = np.flatnonzero(mask)
    session = session or open_session(model, backend)
    root = BranchNode(-math.inf, np.asarray(model.lb, dtype=float), np.asarray(model.ub, dtype=float))
    heap = [(root.bound, 0, root)]
    seq = 1
    incumbent: Optional[np.ndarray] = None
    inc_obj = math.inf
    nodes = rounds = cuts = iterations = 0
    limit_hit = False
    while heap:
        bound, _, node = heapq.heappop(heap)
        if bound >= inc_obj - OBJ_TOL:
            continue
        if nodes >= node_limit:
            limit_hit = True
            break
        nodes += 1
        point = None
        for _ in range(MAX_ROUNDS_PER_NODE):
            point = session.solve(node.lb, node.ub)
            iterations += point.iterations
            if point.status == "unbounded" and nodes == 1:
                return MipPoint(None, float("nan"), "unbounded", iterations, nodes, rounds, cuts)
            if point.status == "iteration_limit":
                return MipPoint(incumbent, inc_obj, "iteration_limit", iterations, nodes, rounds, cuts)
            if not point.optimal or point.objective >= inc_obj - OBJ_TOL:
                point = None
                break
            new_rows = list(separator(point.values)) if separator is not None else []
            if not new_rows:
                break
            for r in new_rows:
                model.add_row(r)
            rounds += 1
            cuts += len(new_rows)
        if point is None:
            continue
        j = most_fractional(point.values, candidates)
        if j < 0:
            incumbent = _snap(point.values, candidates)
            inc_obj = model.objective_value(incumbent)
            continue
        v = point.values[j]
        down_ub = node.ub.copy()
        down_ub[j] = math.floor(v)
        up_lb = node.lb.copy()
        up_lb[j] = math.ceil(v)
        for child in (BranchNode(point.objective, node.lb, down_ub, node.depth + 1, j),
                      BranchNode(point.objective, up_lb, node.ub, node.depth + 1, j)):
            heapq.heappush(heap, (child.bound, seq, child))
            seq += 1
    best_bound = min([inc_obj] + [b for b, _, _ in heap])
    if limit_hit:
        return MipPoint(incumbent, inc_obj, "iteration_limit", iterations, nodes, rounds, cuts, best_bound)
    if incumbent is None:
        return MipPoint(None, float("nan"), "infeasible", iterations, nodes, rounds, cuts, best_bound)
    return MipPoint(incumbent, inc_obj, "optimal", iterations, nodes, rounds, cuts, inc_obj)
