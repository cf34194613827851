"""Exact separation of the exponential cut families via min-cut, and the
cutting-plane / branch-and-cut drivers built on top of them."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .flow import CapGraph, max_flow_min_cut
from .lp import (LpPoint, MipPoint, Row, SolveReport, open_session, solve_mip)

SEP_TOL = 1e-6
MAX_ROUNDS = 10000

UCUT = "UCUT"
SEMI_CUT = "SEMI_CUT"
DIR_CUT = "DIR_CUT"
TREE_CUT = "TREE_CUT"
FAMILIES = (UCUT, SEMI_CUT, DIR_CUT, TREE_CUT)


@dataclass
class CutRow(Row):
    family: str = ""
    scenario: Optional[int] = None  # None marks the first stage
    cut_set: frozenset = frozenset()
    target: int = -1


class CutPool:
    """Canonical fingerprints of every row emitted during a solve."""

    def __init__(self):
        self._seen: set = set()

    def __len__(self) -> int:
        return len(self._seen)

    def add(self, row: Row) -> bool:
        fp = row.fingerprint()
        if fp in self._seen:
            return False
        self._seen.add(fp)
        return True


def _in_arcs_of_set(graph, S: frozenset):
    return [a for a, (i, j) in enumerate(graph.arcs) if j in S and i not in S]


class ScenarioCutOracle:
    """Cuts ``sum_{a in delta^-(S)} sum_terms v[term[a]] >= 1`` for every scenario
    ``k``, ``S`` avoiding the scenario root and hitting a terminal.

    ``terms[k]`` lists index arrays over arcs; an undirected edge variable is
    listed under both of its arcs, which puts it on ``delta(S)`` exactly once.
    """

    def __init__(self, instance, family: str, terms: list[list[np.ndarray]]):
        self.instance = instance
        self.family = family
        self.terms = terms

    def capacities(self, x: np.ndarray, k: int) -> np.ndarray:
        cap = np.zeros(self.instance.graph.arc_count)
        for t in self.terms[k]:
            cap += x[t]
        return cap

    def row(self, k: int, S: frozenset, target: int) -> CutRow:
        coefs: dict[int, float] = {}
        for a in _in_arcs_of_set(self.instance.graph, S):
            for t in self.terms[k]:
                coefs[int(t[a])] = coefs.get(int(t[a]), 0.0) + 1.0
        items = sorted(coefs.items())
        return CutRow(tuple(i for i, _ in items), tuple(v for _, v in items), ">=", 1.0,
                      f"{self.family}[{k + 1}][{target + 1}]", family=self.family,
                      scenario=k, cut_set=S, target=target)

    def separate(self, x: np.ndarray, tol: float = SEP_TOL) -> list[CutRow]:
        inst = self.instance
        g = inst.graph
        n = g.vertex_count
        out = []
        for k in range(inst.K):
            cap = self.capacities(x, k)
            cg = CapGraph(n, ((i, j, max(0.0, c)) for (i, j), c in zip(g.arcs, cap)))
            root = inst.roots[k]
            for t in sorted(inst.derived.rooted_terminals[k]):
                res = max_flow_min_cut(cg, root, t)
                if res.value < 1.0 - tol:
                    out.append(self.row(k, res.sink_side(n), t))
        return out


class TreeCutOracle:
    """First-stage connectivity ``z0(delta^-(S)) >= z0(delta^-(v))`` for
    ``v in S``, ``S`` a subset of the non-root vertices."""

    family = TREE_CUT

    def __init__(self, instance, z0: np.ndarray):
        self.instance = instance
        self.z0 = z0

    def row(self, S: frozenset, v: int) -> CutRow:
        g = self.instance.graph
        coefs: dict[int, float] = {}
        for a in _in_arcs_of_set(g, S):
            coefs[int(self.z0[a])] = coefs.get(int(self.z0[a]), 0.0) + 1.0
        for a in g.in_arcs[v]:
            coefs[int(self.z0[a])] = coefs.get(int(self.z0[a]), 0.0) - 1.0
        items = sorted((i, c) for i, c in coefs.items() if c != 0)
        return CutRow(tuple(i for i, _ in items), tuple(c for _, c in items), ">=", 0.0,
                      f"TREE_CUT[{v + 1}]", family=TREE_CUT, scenario=None, cut_set=S, target=v)

    def separate(self, x: np.ndarray, tol: float = SEP_TOL) -> list[CutRow]:
        inst = self.instance
        g = inst.graph
        n = g.vertex_count
        r = inst.global_root
        z = x[self.z0]
        cg = CapGraph(n, ((i, j, max(0.0, c)) for (i, j), c in zip(g.arcs, z)))
        out = []
        for v in range(n):
            if v == r:
                continue
            indeg = float(sum(z[a] for a in g.in_arcs[v]))
            if indeg <= tol:
                continue
            res = max_flow_min_cut(cg, r, v)
            if res.value < indeg - tol:
                out.append(self.row(res.sink_side(n), v))
        return out


def _family_rows(spec, family: str, x) -> list[CutRow]:
    x = np.asarray(x, dtype=float)
    return [row for o in spec.oracles if o.family == family for row in o.separate(x)]


def separate_undirected(spec, x) -> list[CutRow]:
    return _family_rows(spec, UCUT, x)


def separate_semi_directed(spec, x) -> list[CutRow]:
    return _family_rows(spec, SEMI_CUT, x)


def separate_directed(spec, x) -> list[CutRow]:
    return _family_rows(spec, DIR_CUT, x)


def separate_first_stage_tree(spec, x) -> list[CutRow]:
    return _family_rows(spec, TREE_CUT, x)


class Separator:
    """Callable handed to branch-and-cut: all registered oracles, pool-deduplicated."""

    def __init__(self, oracles, pool: Optional[CutPool] = None, tol: float = SEP_TOL):
        self.oracles = list(oracles)
        self.pool = pool if pool is not None else CutPool()
        self.tol = tol
        self.counts: Counter = Counter()

    def __call__(self, x: np.ndarray) -> list[CutRow]:
        fresh = []
        for o in self.oracles:
            for row in o.separate(x, self.tol):
                if self.pool.add(row):
                    fresh.append(row)
                    self.counts[row.family] += 1
        return fresh


@dataclass
class LoopStats:
    rounds: int = 0
    bounds: list = field(default_factory=list)


class CuttingPlaneSolver:
    """LP optimum over the full exponential polytope of a model spec.

    Works on a private copy of the model; cuts found for one objective stay in
    the model, so re-solving under another objective starts from them.
    """

    def __init__(self, spec, backend: str | None = None, tol: float = SEP_TOL):
        self.spec = spec.copy()
        self.model = self.spec.model
        self.session = open_session(self.model, backend)
        self.separator = Separator(self.spec.oracles, tol=tol)
        self.stats = LoopStats()

    def set_objective(self, obj) -> None:
        self.model.set_objective(obj)

    def solve(self, objective=None, max_rounds: int = MAX_ROUNDS) -> LpPoint:
        if objective is not None:
            self.set_objective(objective)
        self.stats.bounds = []
        for _ in range(max_rounds):
            point = self.session.solve()
            if not point.optimal:
                return point
            self.stats.bounds.append(point.objective)
            rows = self.separator(point.values)
            if not rows:
                return point
            for r in rows:
                self.model.add_row(r)
            self.stats.rounds += 1
        raise RuntimeError(f"separation loop exceeded {max_rounds} rounds")


def run_separation_loop(spec, backend: str | None = None) -> LpPoint:
    """Alternate LP solves and separation until no oracle reports a violated row."""
    return CuttingPlaneSolver(spec, backend).solve()


MODES = ("lp", "integer", "first_stage_relaxed")
BOUND_TYPES = {"lp": "lp_relaxation", "integer": "integer_optimum",
               "first_stage_relaxed": "first_stage_relaxed"}


def solve_spec(spec, mode: str = "integer", backend: str | None = None,
               node_limit: int = 100000) -> tuple[SolveReport, object]:
    """Solve a model spec by cutting planes (``lp``) or branch-and-cut.

    Returns the report together with the per-solve model copy, which holds
    every cut that was added.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    start = time.perf_counter()
    work = spec.copy()
    session = open_session(work.model, backend)
    sep = Separator(work.oracles)
    if mode == "lp":
        mask = np.zeros(work.model.num_vars, dtype=bool)
    else:
        mask = work.integer_mask(relax_first_stage=(mode == "first_stage_relaxed"))
    point: MipPoint = solve_mip(work.model, sep if work.oracles else None, mask,
                                node_limit=node_limit, session=session)
    report = SolveReport(
        formulation=work.label,
        bound_type=BOUND_TYPES[mode],
        status=point.status,
        objective=point.objective,
        values=point.values,
        names=list(work.model.names),
        cuts=dict(sep.counts),
        rounds=point.rounds,
        nodes=point.nodes,
        wall_time=time.perf_counter() - start,
    )
    return report, work
