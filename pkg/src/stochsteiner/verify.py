"""Checks of the worked-example values on the bundled fixtures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .experiments import test_first_stage_integrality
from .fixtures import load
from .formulations import (RSSTP_FORMULATIONS, SSTP_FORMULATIONS, build,
                           flow_balance_invalidity_demo)
from .oracle import brute_force
from .separation import solve_spec

TOL = 1e-6


@dataclass
class ClaimResult:
    name: str
    passed: bool
    detail: str


def _ip(name, fid, backend=None) -> float:
    return solve_spec(build(fid, load(name)), "integer", backend)[0].objective


def _lp(name, fid, backend=None) -> float:
    return solve_spec(build(fid, load(name)), "lp", backend)[0].objective


def _close(a, b) -> bool:
    return abs(a - b) <= TOL


def claim_fig1_sstp(backend):
    vals = {f.value: _ip("fig1", f, backend) for f in SSTP_FORMULATIONS}
    return all(_close(v, 3) for v in vals.values()), f"IP optima {vals}"


def claim_fig1_rsstp(backend):
    vals = {f.value: _ip("fig1_rooted", f, backend) for f in RSSTP_FORMULATIONS}
    return all(_close(v, 12) for v in vals.values()), f"IP optima {vals}"


def claim_fig2(backend):
    inst = load("fig2")
    sol = brute_force(inst)
    vals = {f.value: _ip("fig2", f, backend) for f in SSTP_FORMULATIONS}
    ok = (all(_close(v, 12) for v in vals.values()) and sol.first_stage == {0, 3}
          and sol.scenario_sets == (frozenset({1}), frozenset({2})))
    return ok, (f"IP optima {vals}; exact first stage {sorted(e + 1 for e in sol.first_stage)}, "
                f"additions {[sorted(e + 1 for e in s) for s in sol.scenario_sets]}")


def claim_fig3(backend):
    inst = load("fig3")
    dc1 = test_first_stage_integrality(inst, "dc1", backend)
    dc2 = test_first_stage_integrality(inst, "dc2", backend)
    ip = _ip("fig3", "dc2", backend)
    ratio = ip / dc1["relaxed_obj"]
    ok = (_close(dc1["relaxed_obj"], 4.5) and _close(dc2["relaxed_obj"], 5) and dc2["integral"]
          and _close(ip, 5) and _close(ratio, 10 / 9))
    return ok, (f"dc1 relaxed {dc1['relaxed_obj']:.6g}, dc2 relaxed {dc2['relaxed_obj']:.6g} "
                f"(integral={dc2['integral']}), IP {ip:.6g}, gap {ratio:.9f}")


def claim_fig4(backend):
    uc, uf, sdc1 = (_lp("fig4", f, backend) for f in ("uc", "uf", "sdc1"))
    ok = _close(uc, 1.5) and _close(uf, 1.5) and _close(sdc1, 2)
    return ok, f"LP uc {uc:.6g}, uf {uf:.6g}, sdc1 {sdc1:.6g}"


def claim_fig4_swapped(backend):
    sdc1, sdc2 = (_lp("fig4_swapped", f, backend) for f in ("sdc1", "sdc2"))
    return _close(sdc1, 1.5) and sdc2 > 1.5 + TOL, f"LP sdc1 {sdc1:.6g}, sdc2 {sdc2:.6g}"


def claim_rewrite(backend):
    a, b = _ip("fig1", "sdc2", backend), _ip("fig1", "sdc2star", backend)
    c, d = _ip("fig3", "dc2", backend), _ip("fig3", "dc2star", backend)
    return _close(a, b) and _close(c, d), f"sdc2 {a:.6g} / sdc2star {b:.6g}; dc2 {c:.6g} / dc2star {d:.6g}"


def claim_brute_force(backend):
    parts = []
    ok = True
    for name, want in (("fig1", 3), ("fig1_rooted", 12), ("fig2", 12), ("fig3", 5)):
        got = brute_force(load(name)).value
        ok &= _close(got, want)
        parts.append(f"{name} {got:.6g}")
    return ok, "exhaustive optima " + ", ".join(parts)


def claim_flow_balance(backend):
    res = flow_balance_invalidity_demo(load("fig1_rooted"), backend=backend)
    return res["with"] > res["without"] + TOL, f"with {res['with']:.6g}, without {res['without']:.6g}"


CLAIMS: list[tuple[str, Callable]] = [
    ("fig1: SSTP optimum 3 under every SSTP model", claim_fig1_sstp),
    ("fig1: rSSTP optimum 12 under every rSSTP model", claim_fig1_rsstp),
    ("fig2: optimum 12 with first stage {e1,e4}", claim_fig2),
    ("fig3: relaxed-first-stage bounds 4.5 (dc1) and 5 (dc2), gap 10/9", claim_fig3),
    ("fig4: LP(uc)=LP(uf)=1.5 < LP(sdc1)=2", claim_fig4),
    ("fig4 swapped: LP(sdc1)=1.5 < LP(sdc2)", claim_fig4_swapped),
    ("rewritten objectives give equal optima", claim_rewrite),
    ("exhaustive search agrees on fixtures", claim_brute_force),
    ("flow balance rows cut off the rSSTP optimum of fig1", claim_flow_balance),
]


def run_claims(backend: Optional[str] = None) -> list[ClaimResult]:
    out = []
    for name, fn in CLAIMS:
        try:
            ok, detail = fn(backend)
        except Exception as exc:  # report, keep going
            ok, detail = False, f"error: {exc!r}"
        out.append(ClaimResult(name, bool(ok), detail))
    return out
