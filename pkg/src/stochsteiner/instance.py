"""Stochastic Steiner tree instances: graph, first stage, scenarios.

Costs and probabilities are kept as :class:`fractions.Fraction` so that
probability sums and small hand-built examples stay exact; they are turned
into floats only when a model is handed to the LP layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

PROBABILITY_TOL = Fraction(1, 10**9)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..vertex_count-1``.

    Edge ``e`` is stored as the pair it was given in; its bidirection has the
    forward arc ``2e`` (as stored) and the backward arc ``2e+1``.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def arc_count(self) -> int:
        return 2 * len(self.edges)

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i, j in self.edges:
            out.append((i, j))
            out.append((j, i))
        return tuple(out)

    def arc_to_edge(self, a: int) -> int:
        return a // 2

    def forward(self, e: int) -> int:
        return 2 * e

    def backward(self, e: int) -> int:
        return 2 * e + 1

    def reverse(self, a: int) -> int:
        return a ^ 1

    @cached_property
    def in_arcs(self) -> tuple[tuple[int, ...], ...]:
        lists = [[] for _ in range(self.vertex_count)]
        for a, (_, j) in enumerate(self.arcs):
            lists[j].append(a)
        return tuple(tuple(x) for x in lists)

    @cached_property
    def out_arcs(self) -> tuple[tuple[int, ...], ...]:
        lists = [[] for _ in range(self.vertex_count)]
        for a, (i, _) in enumerate(self.arcs):
            lists[i].append(a)
        return tuple(tuple(x) for x in lists)

    @cached_property
    def incident_edges(self) -> tuple[tuple[int, ...], ...]:
        lists = [[] for _ in range(self.vertex_count)]
        for e, (i, j) in enumerate(self.edges):
            lists[i].append(e)
            lists[j].append(e)
        return tuple(tuple(x) for x in lists)

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for e in self.incident_edges[v]:
                i, j = self.edges[e]
                w = j if i == v else i
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count


@dataclass(frozen=True)
class Scenario:
    probability: Fraction
    edge_costs: tuple[Fraction, ...]
    terminals: frozenset[int]
    root_hint: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "probability", as_fraction(self.probability))
        object.__setattr__(self, "edge_costs", tuple(as_fraction(c) for c in self.edge_costs))
        object.__setattr__(self, "terminals", frozenset(self.terminals))


@dataclass(frozen=True)
class DerivedCosts:
    expected_cost: tuple[Fraction, ...]
    rooted_terminals: tuple[frozenset[int], ...]
    total_rooted_terminals: int


@dataclass(frozen=True)
class StochasticInstance:
    graph: Graph
    first_stage_costs: tuple[Fraction, ...]
    scenarios: tuple[Scenario, ...]
    global_root: Optional[int] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "first_stage_costs",
                           tuple(as_fraction(c) for c in self.first_stage_costs))
        object.__setattr__(self, "scenarios", tuple(self.scenarios))

    @property
    def rooted(self) -> bool:
        return self.global_root is not None

    @property
    def K(self) -> int:
        return len(self.scenarios)

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return select_scenario_roots(self)

    @cached_property
    def derived(self) -> DerivedCosts:
        m = self.graph.edge_count
        cstar = tuple(sum((s.probability * s.edge_costs[e] for s in self.scenarios), Fraction(0))
                      for e in range(m))
        rooted = tuple(s.terminals - {r} for s, r in zip(self.scenarios, self.roots))
        return DerivedCosts(cstar, rooted, sum(len(t) for t in rooted))

    @property
    def expected_cost(self) -> tuple[Fraction, ...]:
        return self.derived.expected_cost

    def with_costs(self, first_stage_costs: Sequence, scenario_costs: Sequence[Sequence]):
        """Same graph, probabilities and terminals with replaced costs."""
        scenarios = tuple(
            Scenario(s.probability, tuple(c), s.terminals, s.root_hint)
            for s, c in zip(self.scenarios, scenario_costs)
        )
        return StochasticInstance(self.graph, tuple(first_stage_costs), scenarios,
                                  self.global_root, self.name)

    def rooted_at(self, root: Optional[int]) -> "StochasticInstance":
        """Copy with ``global_root`` set (the root is added to every terminal set)."""
        if root is None:
            return StochasticInstance(self.graph, self.first_stage_costs, self.scenarios,
                                      None, self.name)
        scenarios = tuple(Scenario(s.probability, s.edge_costs, s.terminals | {root}, None)
                          for s in self.scenarios)
        return StochasticInstance(self.graph, self.first_stage_costs, scenarios, root, self.name)


def _fmt(q: Fraction) -> str:
    return f"{float(q):g}"


def validate(instance: StochasticInstance) -> list[str]:
    """Return the list of violated invariants; empty when the instance is valid."""
    out: list[str] = []
    g = instance.graph
    n = g.vertex_count
    if not isinstance(n, int) or n <= 0:
        out.append(f"graph: vertex_count must be a positive integer, got {n!r}")
        n = 0
    seen = set()
    for e, edge in enumerate(g.edges):
        if len(edge) != 2:
            out.append(f"edge {e + 1}: expected a vertex pair")
            continue
        i, j = edge
        if not (0 <= i < n and 0 <= j < n):
            out.append(f"edge {e + 1}: vertex index out of range")
        if i == j:
            out.append(f"edge {e + 1}: self-loop at vertex {i + 1}")
        key = frozenset((i, j))
        if key in seen:
            out.append(f"edge {e + 1}: duplicate edge {{{i + 1},{j + 1}}}")
        seen.add(key)
    m = g.edge_count
    if len(instance.first_stage_costs) != m:
        out.append(f"first_stage_costs: expected {m} costs, got {len(instance.first_stage_costs)}")
    if any(c < 0 for c in instance.first_stage_costs):
        out.append("first_stage_costs: negative cost")
    if not instance.scenarios:
        out.append("scenarios: at least one scenario required")
    for k, s in enumerate(instance.scenarios, start=1):
        if not (0 < s.probability <= 1):
            out.append(f"scenario {k}: probability {_fmt(s.probability)} outside (0,1]")
        if len(s.edge_costs) != m:
            out.append(f"scenario {k}: expected {m} costs, got {len(s.edge_costs)}")
        if any(c < 0 for c in s.edge_costs):
            out.append(f"scenario {k}: negative cost")
        if not s.terminals:
            out.append(f"scenario {k}: empty terminal set")
        if any(not (0 <= t < n) for t in s.terminals):
            out.append(f"scenario {k}: terminal index out of range")
        if s.root_hint is not None and s.root_hint not in s.terminals:
            out.append(f"scenario {k}: root hint {s.root_hint + 1} is not a terminal")
    total = sum((s.probability for s in instance.scenarios), Fraction(0))
    if instance.scenarios and abs(total - 1) > PROBABILITY_TOL:
        out.append(f"probabilities sum to {_fmt(total)}")
    r = instance.global_root
    if r is not None:
        if not (0 <= r < n):
            out.append("global_root: vertex index out of range")
        for k, s in enumerate(instance.scenarios, start=1):
            if r not in s.terminals:
                out.append(f"root not terminal in scenario {k}")
    return out


@dataclass(frozen=True)
class EdgeAssumption:
    edge: int
    below_expected: bool
    above_min_scenario: bool

    @property
    def ok(self) -> bool:
        return self.below_expected and self.above_min_scenario


def check_cost_assumptions(instance: StochasticInstance) -> list[EdgeAssumption]:
    """Per edge: ``c0 < c*`` and ``c0 > min_k p^k c^k``. Reports only."""
    cstar = instance.expected_cost
    report = []
    for e, c0 in enumerate(instance.first_stage_costs):
        lowest = min(s.probability * s.edge_costs[e] for s in instance.scenarios)
        report.append(EdgeAssumption(e, c0 < cstar[e], c0 > lowest))
    return report


def select_scenario_roots(instance: StochasticInstance) -> tuple[int, ...]:
    if instance.global_root is not None:
        return tuple(instance.global_root for _ in instance.scenarios)
    return tuple(s.root_hint if s.root_hint is not None else min(s.terminals)
                 for s in instance.scenarios)
