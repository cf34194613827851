import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stochsteiner.fixtures import fixture_text, load
from stochsteiner.instance import Graph, Scenario, StochasticInstance
from stochsteiner.io import InstanceParseError, parse_instance, write_instance, write_report
from stochsteiner.lp import SolveReport


def test_parse_fig1():
    inst = parse_instance(fixture_text("fig1"))
    assert inst.graph.vertex_count == 4
    assert inst.graph.edge_count == 3
    assert inst.K == 1
    assert inst.scenarios[0].terminals == {0, 3}
    assert inst.global_root is None


def test_parse_fig2():
    inst = load("fig2")
    assert (inst.graph.vertex_count, inst.graph.edge_count, inst.K) == (4, 6, 2)
    assert [s.probability for s in inst.scenarios] == [Fraction(1, 2)] * 2


def test_root_section(fig3):
    assert fig3.global_root == 0


def test_empty_text_fails_at_line_1():
    with pytest.raises(InstanceParseError) as err:
        parse_instance("")
    assert err.value.line == 1


@pytest.mark.parametrize("text, fragment", [
    ("SECTION Graph\nNodes 2\nE 1 3 1\nEND\n", "out of range"),
    ("SECTION Graph\nNodes 2\nEdges 1\nE 1 2 1\nEND\nSECTION Scenario\nTerminals 1 2\nEND\n",
     "without Probability"),
    ("SECTION Graph\nNodes 2\nEdges 2\nE 1 2 1\nEND\n", "declares 2"),
    ("SECTION Graph\nNodes 2\nEdges 1\nE 1 2 x\nEND\n", "not a number"),
    ("SECTION Graph\nNodes 2\nEdges 1\nE 1 2 1\n", "missing END"),
    ("SECTION Graph\nNodes 2\nEdges 1\nE 1 2 1\nEND\nSECTION Scenario\nProbability 1/2\n"
     "Terminals 1 2\nEND\n", "probabilities sum"),
    ("SECTION Graph\nNodes 3\nEdges 1\nE 1 2 1\nEND\nSECTION Scenario\nProbability 1\n"
     "Terminals 2 3\nEND\nSECTION Root 1\nEND\n", "root not terminal"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(InstanceParseError, match=fragment):
        parse_instance(text)


def test_omitted_scenario_cost_defaults_to_first_stage():
    inst = parse_instance("SECTION Graph\nNodes 2\nEdges 1\nE 1 2 7\nEND\n"
                          "SECTION Scenario\nProbability 1\nTerminals 1 2\nEND\n")
    assert inst.scenarios[0].edge_costs == (7,)


@st.composite
def instances(draw):
    n = draw(st.integers(2, 6))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = tuple(draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True)))
    m = len(edges)
    cost = st.fractions(min_value=0, max_value=50, max_denominator=8)
    c0 = tuple(draw(st.lists(cost, min_size=m, max_size=m)))
    K = draw(st.integers(1, 3))
    weights = draw(st.lists(st.integers(1, 5), min_size=K, max_size=K))
    scen = []
    for w in weights:
        terms = frozenset(draw(st.lists(st.integers(0, n - 1), min_size=1, unique=True)))
        scen.append(Scenario(Fraction(w, sum(weights)), tuple(draw(st.lists(cost, min_size=m, max_size=m))),
                             terms, draw(st.sampled_from(sorted(terms) + [None]))))
    return StochasticInstance(Graph(n, edges), c0, tuple(scen))


@settings(max_examples=60, deadline=None)
@given(instances())
def test_write_parse_round_trip(inst):
    back = parse_instance(write_instance(inst))
    assert back == inst


def test_round_trip_rooted(fig3):
    assert parse_instance(write_instance(fig3)) == fig3


def _report(status="optimal", values=(1.0, 0.0), bound="integer_optimum"):
    return SolveReport("sdc2", bound, status, 3.0 if values is not None else float("nan"),
                       None if values is None else np.array(values), ["x0[1]", "x0[2]"],
                       {"DIR_CUT": 2}, 1, 1, None)


def test_report_json():
    doc = json.loads(write_report(_report()))
    assert doc["schema"] == 1
    assert doc["objective"] == 3.0
    assert doc["values"] == {"x0[1]": 1.0}
    assert "wall_time" not in doc


def test_infeasible_report_has_no_values():
    doc = json.loads(write_report(_report("infeasible", None)))
    assert doc["status"] == "infeasible"
    assert "values" not in doc and "objective" not in doc


def test_lp_report_bound_type():
    assert json.loads(write_report(_report(bound="lp_relaxation")))["bound_type"] == "lp_relaxation"


def test_report_is_deterministic():
    assert write_report(_report()) == write_report(_report())
