import itertools
import random

import pytest

from stochsteiner.flow import CapGraph, max_flow_min_cut


def brute_min_cut(g: CapGraph, s, t):
    best = float("inf")
    others = [v for v in range(g.vertex_count) if v not in (s, t)]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            side = {s, *extra}
            best = min(best, sum(c for (u, v), c in g.cap.items() if u in side and v not in side))
    return best


def test_single_arc():
    res = max_flow_min_cut(CapGraph(2, [(0, 1, 1.0)]), 0, 1)
    assert res.value == pytest.approx(1.0)
    assert res.cut_arcs == [(0, 1)]
    assert res.source_side == {0}


def test_triangle_half_capacities():
    arcs = [(i, j, 0.5) for i in range(3) for j in range(3) if i != j]
    g = CapGraph(3, arcs)
    res = max_flow_min_cut(g, 0, 1)
    assert res.value == pytest.approx(brute_min_cut(g, 0, 1))
    assert res.value == pytest.approx(1.0)


def test_unreachable_sink():
    res = max_flow_min_cut(CapGraph(3, [(0, 1, 2.0)]), 0, 2)
    assert res.value == 0
    assert res.source_side == {0, 1}
    assert res.sink_side(3) == {2}


def test_parallel_arcs_merge_and_negative_rejected():
    g = CapGraph(2, [(0, 1, 0.25), (0, 1, 0.5)])
    assert g.cap[(0, 1)] == pytest.approx(0.75)
    with pytest.raises(ValueError):
        g.add_arc(0, 1, -1)
    with pytest.raises(ValueError):
        max_flow_min_cut(g, 0, 0)


@pytest.mark.parametrize("seed", range(40))
def test_matches_enumeration_and_conserves_flow(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    arcs = [(i, j, rng.choice([0, 0.25, 0.5, 1, rng.random()]))
            for i in range(n) for j in range(n) if i != j and rng.random() < 0.5]
    g = CapGraph(n, arcs)
    s, t = rng.sample(range(n), 2)
    res = max_flow_min_cut(g, s, t)
    assert res.value == pytest.approx(brute_min_cut(g, s, t), abs=1e-9)
    cut_cap = sum(g.cap[a] for a in res.cut_arcs)
    assert cut_cap == pytest.approx(res.value, abs=1e-9)
    for v in range(n):
        net = sum(f for (a, b), f in res.flow.items() if b == v) - sum(
            f for (a, b), f in res.flow.items() if a == v)
        want = -res.value if v == s else res.value if v == t else 0.0
        assert net == pytest.approx(want, abs=1e-9)
    for a, f in res.flow.items():
        assert f <= g.cap[a] + 1e-9


def test_insertion_order_does_not_matter():
    arcs = [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5), (2, 1, 0.5)]
    a = max_flow_min_cut(CapGraph(3, arcs), 0, 1)
    b = max_flow_min_cut(CapGraph(3, arcs[::-1]), 0, 1)
    assert a.source_side == b.source_side and a.value == b.value
