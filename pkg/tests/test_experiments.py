import json
from pathlib import Path

import numpy as np
import pytest

from stochsteiner.experiments import (PreconditionError, compare, generate_random_instance, map_point,
                                      perturbed_instances, projection_defect, test_first_stage_integrality)
from stochsteiner.formulations import FormulationError, FormulationId, build
from stochsteiner.instance import check_cost_assumptions, validate
from stochsteiner.io import parse_instance, write_instance
from stochsteiner.separation import run_separation_loop

GOLDEN = Path(__file__).parent / "data" / "random_seed1.sstp"


def test_fig4_comparison(fig4):
    table = compare(fig4, perturbations=3)
    assert table.ok
    r = table.results
    assert r[FormulationId.UC].lp == pytest.approx(1.5)
    assert r[FormulationId.SDC1].lp == pytest.approx(2)


def test_swapped_comparison(fig4_swapped):
    table = compare(fig4_swapped, perturbations=3, integer=True)
    r = table.results
    assert r[FormulationId.SDC1].lp == pytest.approx(1.5)
    assert r[FormulationId.SDC2].lp > 1.5 + 1e-6
    assert all(v.ip == pytest.approx(2) for v in r.values())


def test_fig3_rooted_comparison(fig3):
    table = compare(fig3, perturbations=3)
    assert table.ok
    lps = {f: v.lp for f, v in table.results.items()}
    assert max(lps.values()) - min(lps.values()) < 1e-6


def test_inapplicable_formulation(fig1):
    with pytest.raises(FormulationError):
        compare(fig1, ["dc2"])


def test_flags_are_raised_for_a_broken_bound(fig4, monkeypatch):
    import stochsteiner.experiments as ex

    monkeypatch.setattr(ex, "EQUALITIES", [(FormulationId.UC, FormulationId.SDC1)])
    table = compare(fig4, ["uc", "sdc1"], perturbations=0, witnesses=False)
    assert not table.ok and "LP(uc)" in table.flags[0]


def test_table_emitters(fig4):
    table = compare(fig4, ["uc", "sdc1"], perturbations=2)
    tsv = table.to_tsv()
    assert tsv.splitlines()[0] == "formulation\tlp\tip\tcuts\trounds"
    doc = json.loads(table.to_json())
    assert doc["formulations"]["uc"]["lp"] == 1.5
    assert len(doc["formulations"]["sdc1"]["perturbed_lp"]) == 2
    assert "seconds" not in doc["formulations"]["uc"]
    assert table.to_json() == compare(fig4, ["uc", "sdc1"], perturbations=2).to_json()


def test_perturbations_are_nonnegative_and_reproducible(fig2):
    a = perturbed_instances(fig2, 5, seed=3)
    b = perturbed_instances(fig2, 5, seed=3)
    assert a == b
    for inst in a:
        assert all(x >= y for x, y in zip(inst.first_stage_costs, fig2.first_stage_costs))
        assert all(inst.first_stage_costs[e] - fig2.first_stage_costs[e] <= 10 for e in range(6))


def test_projection_witnesses(fig4_swapped, fig3):
    for inst, src, dst in ((fig4_swapped, "sdc2", "sdc1"), (fig4_swapped, "sdc1", "uc"), (fig3, "dc2", "dc1")):
        s, d = build(src, inst), build(dst, inst)
        x = run_separation_loop(s).values
        y = map_point(s, x, d)
        assert projection_defect(d, y) <= 1e-6
        assert np.dot(d.model.obj, y) == pytest.approx(np.dot(s.model.obj, x))


def test_first_stage_integrality_fig3(fig3):
    res = test_first_stage_integrality(fig3, "dc2")
    assert res["relaxed_obj"] == pytest.approx(5) and res["integral"]
    res = test_first_stage_integrality(fig3, "dc1")
    assert res["relaxed_obj"] == pytest.approx(4.5) and not res["integral"]


def test_dc2_precondition(fig1_rooted):
    with pytest.raises(PreconditionError, match="c0_e < c\\*_e"):
        test_first_stage_integrality(fig1_rooted, "dc2")


@pytest.mark.parametrize("seed", range(10))
def test_sdc2_first_stage_integral_sample(seed):
    inst = generate_random_instance(seed, vertices=6, edge_prob=0.5, scenarios=3, max_edges=10)
    assert test_first_stage_integrality(inst, "sdc2")["integral"]


def test_generator_golden_file():
    inst = generate_random_instance(1, vertices=6, edge_prob=0.5, scenarios=2)
    assert write_instance(inst) == GOLDEN.read_text()


def test_generator_properties():
    for seed in range(20):
        inst = generate_random_instance(seed, vertices=7, edge_prob=0.4, scenarios=3)
        assert validate(inst) == [] and inst.graph.is_connected()
        costs = list(inst.first_stage_costs) + [c for s in inst.scenarios for c in s.edge_costs]
        assert all(1 <= c <= 20 for c in costs)
        assert all(2 <= len(s.terminals) <= 4 for s in inst.scenarios)
    full = generate_random_instance(0, vertices=5, edge_prob=1.0, scenarios=1)
    assert full.graph.edge_count == 10


def test_generator_cost_regime_and_caps():
    for seed in range(20):
        inst = generate_random_instance(seed, vertices=6, edge_prob=0.9, scenarios=1,
                                        cost_regime="enforce_c0_below_cstar", rooted=True, max_edges=7)
        assert all(a.below_expected for a in check_cost_assumptions(inst))
        assert inst.graph.edge_count <= 7 and inst.graph.is_connected()
        assert inst.rooted and validate(inst) == []
    with pytest.raises(ValueError):
        generate_random_instance(0, cost_regime="bogus")


def test_golden_file_parses():
    assert parse_instance(GOLDEN.read_text()).graph.vertex_count == 6
