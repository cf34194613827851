"""Max-flow / min-cut (Dinic) on small capacitated digraphs with float capacities."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

EPS = 1e-9


class CapGraph:
    """Digraph with nonnegative capacities; parallel arcs are merged."""

    def __init__(self, vertex_count: int, arcs=()):
        self.vertex_count = vertex_count
        self.cap: dict[tuple[int, int], float] = {}
        for u, v, c in arcs:
            self.add_arc(u, v, c)

    def add_arc(self, u: int, v: int, capacity: float) -> None:
        if capacity < 0:
            raise ValueError(f"negative capacity on arc ({u},{v})")
        if u == v:
            return
        self.cap[(u, v)] = self.cap.get((u, v), 0.0) + float(capacity)


@dataclass
class MinCutResult:
    value: float
    source_side: frozenset
    cut_arcs: list
    flow: dict

    def sink_side(self, vertex_count: int) -> frozenset:
        return frozenset(range(vertex_count)) - self.source_side


def max_flow_min_cut(g: CapGraph, source: int, sink: int) -> MinCutResult:
    """Maximum ``source``-``sink`` flow and the min cut nearest the source.

    The source side is the set reachable from ``source`` in the final residual
    graph. Capacities below ``EPS`` are treated as absent.
    """
    if source == sink:
        raise ValueError("source and sink must differ")
    n = g.vertex_count
    head: list[int] = []
    res: list[float] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    original: list[tuple[int, int, float]] = []
    for (u, v), c in sorted(g.cap.items()):
        if c < EPS:
            continue
        adj[u].append(len(head))
        head.append(v)
        res.append(c)
        adj[v].append(len(head))
        head.append(u)
        res.append(0.0)
        original.append((u, v, c))

    total = 0.0
    while True:
        level = [-1] * n
        level[source] = 0
        q = deque([source])
        while q:
            u = q.popleft()
            for a in adj[u]:
                if res[a] > EPS and level[head[a]] < 0:
                    level[head[a]] = level[u] + 1
                    q.append(head[a])
        if level[sink] < 0:
            break
        it = [0] * n

        def push(u: int, limit: float) -> float:
            if u == sink:
                return limit
            while it[u] < len(adj[u]):
                a = adj[u][it[u]]
                v = head[a]
                if res[a] > EPS and level[v] == level[u] + 1:
                    pushed = push(v, min(limit, res[a]))
                    if pushed > EPS:
                        res[a] -= pushed
                        res[a ^ 1] += pushed
                        return pushed
                it[u] += 1
            return 0.0

        while True:
            f = push(source, float("inf"))
            if f <= EPS:
                break
            total += f

    reach = {source}
    q = deque([source])
    while q:
        u = q.popleft()
        for a in adj[u]:
            v = head[a]
            if res[a] > EPS and v not in reach:
                reach.add(v)
                q.append(v)
    flow = {}
    cut_arcs = []
    for k, (u, v, c) in enumerate(original):
        f = c - res[2 * k]
        if f > EPS:
            flow[(u, v)] = flow.get((u, v), 0.0) + f
        if u in reach and v not in reach:
            cut_arcs.append((u, v))
    return MinCutResult(total, frozenset(reach), cut_arcs, flow)
