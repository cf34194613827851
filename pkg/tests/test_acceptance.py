"""Acceptance gate: one test per criterion, at the stated tolerances.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import random
import time

import numpy as np
import pytest

from _enum import violated_scenario_cuts, violated_tree_cuts
from stochsteiner.experiments import compare, generate_random_instance, test_first_stage_integrality
from stochsteiner.fixtures import load
from stochsteiner.formulations import (RSSTP_FORMULATIONS, SSTP_FORMULATIONS, FormulationId,
                                       add_valid_inequalities, build, edge_sets)
from stochsteiner.oracle import brute_force
from stochsteiner.separation import TREE_CUT, run_separation_loop, solve_spec

TOL = 1e-6


def _ip(inst, fid):
    report, _ = solve_spec(build(fid, inst), "integer")
    assert report.status == "optimal"
    return report.objective


def _lp(inst, fid):
    report, _ = solve_spec(build(fid, inst), "lp")
    assert report.status == "optimal"
    return report.objective


def hierarchy_instance(seed, rooted=False):
    r = random.Random(10_000 * (2 if rooted else 1) + seed)
    return generate_random_instance(seed, vertices=r.randint(4, 10), edge_prob=r.uniform(0.3, 0.8),
                                    scenarios=r.randint(1, 3), rooted=rooted)


@pytest.mark.criterion(1, "fig1: SSTP optimum 3, rSSTP optimum 12, each solve < 1 s")
def test_criterion_01_fig1():
    for name, fids, want in (("fig1", SSTP_FORMULATIONS, 3.0), ("fig1_rooted", RSSTP_FORMULATIONS, 12.0)):
        inst = load(name)
        for fid in fids:
            start = time.perf_counter()
            got = _ip(inst, fid)
            elapsed = time.perf_counter() - start
            assert got == pytest.approx(want, abs=TOL), fid
            assert elapsed < 1.0, (fid, elapsed)


@pytest.mark.criterion(2, "fig2: optimum 12, first stage {e1,e4}, additions e2/e3")
def test_criterion_02_fig2():
    inst = load("fig2")
    for fid in SSTP_FORMULATIONS:
        report, work = solve_spec(build(fid, inst), "integer")
        assert report.objective == pytest.approx(12.0, abs=TOL), fid
        e0, ek = edge_sets(work, report.values)
        assert e0 == {0, 3}, fid
        assert ek == (frozenset({1}), frozenset({2})), fid


@pytest.mark.criterion(3, "fig3: dc1 relaxed 4.5, dc2 relaxed 5 integral, IP 5, gap 10/9")
def test_criterion_03_fig3():
    inst = load("fig3")
    dc1 = test_first_stage_integrality(inst, "dc1")
    dc2 = test_first_stage_integrality(inst, "dc2")
    ip = _ip(inst, "dc2")
    assert dc1["relaxed_obj"] == pytest.approx(4.5, abs=TOL)
    assert dc2["relaxed_obj"] == pytest.approx(5.0, abs=TOL)
    assert dc2["integral"]
    assert ip == pytest.approx(5.0, abs=TOL)
    assert ip / dc1["relaxed_obj"] == pytest.approx(10 / 9, abs=TOL)


@pytest.mark.criterion(4, "fig4: LP(uc)=LP(uf)=1.5, LP(sdc1)=2; swapped LP(sdc1)=1.5 < LP(sdc2)")
def test_criterion_04_fig4():
    fig4, swapped = load("fig4"), load("fig4_swapped")
    assert _lp(fig4, "uc") == pytest.approx(1.5, abs=TOL)
    assert _lp(fig4, "uf") == pytest.approx(1.5, abs=TOL)
    assert _lp(fig4, "sdc1") == pytest.approx(2.0, abs=TOL)
    assert _lp(swapped, "sdc1") == pytest.approx(1.5, abs=TOL)
    assert _lp(swapped, "sdc2") > 1.5 + TOL


@pytest.mark.criterion(5, "SSTP hierarchy on 200 random instances x 21 objectives, < 5 min")
def test_criterion_05_sstp_hierarchy():
    start = time.perf_counter()
    flagged = []
    for seed in range(200):
        table = compare(hierarchy_instance(seed), perturbations=20, seed=seed)
        if table.flags:
            flagged.append((seed, table.flags[:2]))
    elapsed = time.perf_counter() - start
    assert not flagged
    assert elapsed < 300, elapsed


@pytest.mark.criterion(6, "rSSTP equivalence dc1=dc2=dc2star=df on 200 random instances")
def test_criterion_06_rooted_equivalence():
    flagged = []
    for seed in range(200):
        table = compare(hierarchy_instance(seed, rooted=True), perturbations=20, seed=seed)
        if table.flags:
            flagged.append((seed, table.flags[:2]))
    assert not flagged


def integrality_instance(seed, rooted):
    r = random.Random(30_000 + seed)
    regime = "enforce_c0_below_cstar" if rooted else "unconstrained"
    return generate_random_instance(40_000 + seed, vertices=r.randint(4, 8), edge_prob=r.uniform(0.3, 0.8),
                                    scenarios=r.randint(1, 3), cost_regime=regime, rooted=rooted,
                                    max_edges=10)


@pytest.mark.criterion(7, "relaxed first stage integral: sdc2 100/100, dc2 with c0 < c* 100/100")
def test_criterion_07_integrality():
    sdc2 = sum(test_first_stage_integrality(integrality_instance(s, False), "sdc2")["integral"]
               for s in range(100))
    dc2 = sum(test_first_stage_integrality(integrality_instance(s, True), "dc2")["integral"]
              for s in range(100))
    assert (sdc2, dc2) == (100, 100)


@pytest.mark.criterion(8, "branch-and-cut = brute force on 50 random instances, every formulation")
def test_criterion_08_oracle_equivalence():
    mismatches = []
    for seed in range(50):
        r = random.Random(50_000 + seed)
        rooted = seed % 2 == 1
        inst = generate_random_instance(60_000 + seed, vertices=r.randint(3, 7), edge_prob=r.uniform(0.3, 0.9),
                                        scenarios=r.randint(1, 3), rooted=rooted, max_edges=8)
        assert inst.graph.edge_count <= 8
        exact = brute_force(inst).value
        for fid in (RSSTP_FORMULATIONS if rooted else SSTP_FORMULATIONS):
            got = _ip(inst, fid)
            if abs(got - exact) > TOL:
                mismatches.append((seed, fid.value, got, exact))
    assert not mismatches


@pytest.mark.criterion(9, "valid inequalities keep fixture IP optima and never lower LP bounds")
def test_criterion_09_valid_inequalities():
    for name in ("fig1", "fig1_rooted", "fig2", "fig3", "fig4", "fig4_swapped"):
        inst = load(name)
        fids = RSSTP_FORMULATIONS if inst.rooted else SSTP_FORMULATIONS
        for fid in fids:
            if fid in (FormulationId.UC, FormulationId.UF):
                continue
            spec = build(fid, inst)
            strong = add_valid_inequalities(spec)
            ip0 = solve_spec(spec, "integer")[0].objective
            ip1 = solve_spec(strong, "integer")[0].objective
            lp0 = solve_spec(spec, "lp")[0].objective
            lp1 = solve_spec(strong, "lp")[0].objective
            assert ip1 == pytest.approx(ip0, abs=TOL), (name, fid)
            assert lp1 >= lp0 - TOL, (name, fid)


CUT_FORMULATIONS_SSTP = ("uc", "sdc1", "sdc2", "sdc2star")
CUT_FORMULATIONS_RSSTP = ("dc1", "dc2", "dc2star")


@pytest.mark.criterion(10, "no violated cut of any family after separation, by enumeration (50 instances)")
def test_criterion_10_separation_exactness():
    found = []
    for seed in range(50):
        r = random.Random(70_000 + seed)
        rooted = seed % 2 == 1
        inst = generate_random_instance(80_000 + seed, vertices=r.randint(3, 7), edge_prob=r.uniform(0.3, 0.9),
                                        scenarios=r.randint(1, 3), rooted=rooted)
        for fid in (CUT_FORMULATIONS_RSSTP if rooted else CUT_FORMULATIONS_SSTP):
            spec = build(fid, inst)
            point = run_separation_loop(spec)
            assert point.optimal
            x = np.asarray(point.values)
            bad = violated_scenario_cuts(spec, x)
            if any(o.family == TREE_CUT for o in spec.oracles):
                bad += violated_tree_cuts(spec, x)
            if bad:
                found.append((seed, fid, bad[:2]))
    assert not found
