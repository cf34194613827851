"""Exhaustive ground truth for tiny instances."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .instance import StochasticInstance

MAX_EDGES = 16


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ExactSolution:
    first_stage: frozenset
    scenario_sets: tuple
    objective: Fraction

    @property
    def value(self) -> float:
        return float(self.objective)


def solution_cost(instance: StochasticInstance, first_stage, scenario_sets) -> Fraction:
    total = sum((instance.first_stage_costs[e] for e in first_stage), Fraction(0))
    for s, ek in zip(instance.scenarios, scenario_sets):
        total += s.probability * sum((s.edge_costs[e] for e in ek), Fraction(0))
    return total


class _DSU:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, a):
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        self.p[a] = b
        return True


def _connects(graph, edges, terminals) -> bool:
    dsu = _DSU(graph.vertex_count)
    for e in edges:
        dsu.union(*graph.edges[e])
    return len({dsu.find(t) for t in terminals}) <= 1


def _is_rooted_tree(graph, edges, root) -> bool:
    if not edges:
        return True
    dsu = _DSU(graph.vertex_count)
    touched = {root}
    for e in edges:
        i, j = graph.edges[e]
        if not dsu.union(i, j):
            return False
        touched.update((i, j))
    return len({dsu.find(v) for v in touched}) == 1


def check_feasible(instance: StochasticInstance, solution: ExactSolution,
                   rooted: Optional[bool] = None) -> bool:
    rooted = instance.rooted if rooted is None else rooted
    g = instance.graph
    if len(solution.scenario_sets) != instance.K:
        return False
    for s, ek in zip(instance.scenarios, solution.scenario_sets):
        if not _connects(g, set(solution.first_stage) | set(ek), s.terminals):
            return False
    if rooted:
        return _is_rooted_tree(g, solution.first_stage, instance.global_root)
    return True


def _bits(mask: int, m: int) -> frozenset:
    return frozenset(e for e in range(m) if mask >> e & 1)


def brute_force(instance: StochasticInstance, rooted: Optional[bool] = None) -> ExactSolution:
    """Optimal solution by enumerating every first-stage edge set.

    For each scenario, the cheapest connecting superset of every edge set is
    found with a superset-minimum sweep over the subset lattice, so the whole
    search costs ``O(K * m * 2^m)``. With ``rooted``, first-stage sets are
    limited to trees containing the global root (the empty set included).
    """
    rooted = instance.rooted if rooted is None else rooted
    g = instance.graph
    m = g.edge_count
    if m > MAX_EDGES:
        raise InstanceTooLarge(f"brute force supports at most {MAX_EDGES} edges, got {m}")
    if rooted and instance.global_root is None:
        raise ValueError("rooted enumeration needs a global root")
    size = 1 << m
    masks = np.arange(size)
    bit = [(masks >> e) & 1 for e in range(m)]

    def cost_table(costs) -> np.ndarray:
        out = np.zeros(size)
        for e in range(m):
            out += bit[e] * float(costs[e])
        return out

    labels = []
    for mask in range(size):
        dsu = _DSU(g.vertex_count)
        for e in range(m):
            if mask >> e & 1:
                dsu.union(*g.edges[e])
        labels.append([dsu.find(v) for v in range(g.vertex_count)])

    total = cost_table(instance.first_stage_costs)
    choice = []
    for s in instance.scenarios:
        terms = sorted(s.terminals)
        ck = cost_table(s.edge_costs)
        conn = np.array([len({lab[t] for t in terms}) <= 1 for lab in labels])
        best = np.where(conn, ck, np.inf)
        arg = masks.copy()
        for e in range(m):
            lo = masks[bit[e] == 0]
            hi = lo | (1 << e)
            better = best[hi] < best[lo]
            best[lo] = np.where(better, best[hi], best[lo])
            arg[lo] = np.where(better, arg[hi], arg[lo])
        total = total + float(s.probability) * (best - ck)
        choice.append(arg)
    if rooted:
        ok = np.array([_is_rooted_tree(g, _bits(mask, m), instance.global_root)
                       for mask in range(size)])
        total = np.where(ok, total, np.inf)
    if not np.isfinite(total).any():
        raise ValueError("instance has no feasible solution")

    # exact comparison among float near-ties
    cands = np.flatnonzero(total <= total.min() + 1e-6 * max(1.0, abs(total.min())))
    best_sol = None
    for mask in cands:
        e0 = _bits(int(mask), m)
        eks = tuple(_bits(int(arg[mask]), m) - e0 for arg in choice)
        sol = ExactSolution(e0, eks, solution_cost(instance, e0, eks))
        if best_sol is None or sol.objective < best_sol.objective:
            best_sol = sol
    return best_sol
