"""The ten stochastic Steiner tree models as ModelSpecs.

A ModelSpec bundles the static LP/MIP model (variables, objective and
polynomially many rows), the typed variable blocks, and the separation
oracles for the exponential row families.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from .instance import StochasticInstance
from .lp import LpModel, Row
from .separation import (DIR_CUT, SEMI_CUT, UCUT, ScenarioCutOracle, TreeCutOracle)


class FormulationId(enum.Enum):
    UC = "uc"
    UF = "uf"
    SDC1 = "sdc1"
    SDC2 = "sdc2"
    SDC2STAR = "sdc2star"
    SDF = "sdf"
    DC1 = "dc1"
    DC2 = "dc2"
    DC2STAR = "dc2star"
    DF = "df"

    @property
    def rooted(self) -> bool:
        return self in ROOTED

    @classmethod
    def parse(cls, text: str) -> "FormulationId":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown formulation {text!r}; choose from "
                             + ", ".join(f.value for f in cls)) from None


ROOTED = frozenset({FormulationId.DC1, FormulationId.DC2, FormulationId.DC2STAR, FormulationId.DF})
SSTP_FORMULATIONS = tuple(f for f in FormulationId if f not in ROOTED)
RSSTP_FORMULATIONS = tuple(f for f in FormulationId if f in ROOTED)


class FormulationError(ValueError):
    pass


@dataclass
class ModelSpec:
    formulation: FormulationId
    instance: StochasticInstance
    model: LpModel
    blocks: dict
    oracles: list
    first_stage: np.ndarray
    objective_variant: str = "printed"
    extras: tuple = ()

    @property
    def label(self) -> str:
        return "+".join((self.formulation.value,) + tuple(self.extras))

    def copy(self) -> "ModelSpec":
        return replace(self, model=self.model.copy(), oracles=list(self.oracles))

    def integer_mask(self, relax_first_stage: bool = False) -> np.ndarray:
        mask = np.asarray(self.model.integer, dtype=bool).copy()
        if relax_first_stage:
            mask[self.first_stage] = False
        return mask

    def objective_for(self, instance: StochasticInstance) -> np.ndarray:
        """Objective vector of this model under the costs of ``instance``
        (same graph, probabilities and terminals)."""
        return _OBJECTIVES[self.formulation](self.blocks, instance, self.model.num_vars,
                                             self.objective_variant)


# -- helpers -----------------------------------------------------------------

def _costs(instance):
    c0 = np.array([float(c) for c in instance.first_stage_costs])
    ck = np.array([[float(c) for c in s.edge_costs] for s in instance.scenarios]).reshape(
        instance.K, instance.graph.edge_count)
    p = np.array([float(s.probability) for s in instance.scenarios])
    return c0, ck, p


def _arc_edges(graph) -> np.ndarray:
    return np.repeat(np.arange(graph.edge_count), 2)


def _arc_label(graph, a: int) -> str:
    i, j = graph.arcs[a]
    return f"({i + 1},{j + 1})"


def _add_edge_block(model, name, graph, integer=True) -> np.ndarray:
    return np.array([model.add_var(f"{name}[{e + 1}]", integer=integer)
                     for e in range(graph.edge_count)], dtype=int)


def _add_arc_block(model, name, graph, integer=True) -> np.ndarray:
    return np.array([model.add_var(f"{name}[{_arc_label(graph, a)}]", integer=integer)
                     for a in range(graph.arc_count)], dtype=int)


def _require_sstp(instance, fid):
    if not instance.scenarios:
        raise FormulationError("instance has no scenarios")


def _require_rooted(instance, fid):
    if instance.global_root is None:
        raise FormulationError(f"{fid.value} needs a global root (rSSTP instance)")


def _row(coefs: dict, sense: str, rhs: float, name: str) -> Row:
    return Row.from_dict(coefs, sense, rhs, name)


def _add(coefs: dict, idx, val: float) -> None:
    coefs[int(idx)] = coefs.get(int(idx), 0.0) + val


def _conservation(model, graph, f: np.ndarray, source: int, sink: int, label: str,
                  amount: Optional[int] = None) -> None:
    """Inflow minus outflow: -amount at ``source``, +amount at ``sink``, 0 elsewhere.

    ``amount`` is a variable index (node variable) or ``None`` for one unit.
    """
    for i in range(graph.vertex_count):
        coefs: dict = {}
        for a in graph.in_arcs[i]:
            _add(coefs, f[a], 1.0)
        for a in graph.out_arcs[i]:
            _add(coefs, f[a], -1.0)
        rhs = 0.0
        if i == source:
            if amount is None:
                rhs = -1.0
            else:
                _add(coefs, amount, 1.0)
        elif i == sink:
            if amount is None:
                rhs = 1.0
            else:
                _add(coefs, amount, -1.0)
        model.add_row(_row(coefs, "=", rhs, f"flow{label}[{i + 1}]"))


# -- objectives ----------------------------------------------------------------

def _obj_uc(blocks, inst, n, variant):
    c0, ck, p = _costs(inst)
    obj = np.zeros(n)
    obj[blocks["x0"]] = c0
    for k in range(inst.K):
        obj[blocks["xk"][k]] = p[k] * ck[k]
    return obj


def _cstar(inst) -> np.ndarray:
    return np.array([float(c) for c in inst.expected_cost])


def _first_stage_coef(inst, variant) -> np.ndarray:
    """First-stage coefficient of the linked models.

    ``printed`` accumulates the corrective ``-p^k c^k`` terms scenario by
    scenario; ``rewritten`` uses ``c0 - c*`` computed in exact arithmetic.
    """
    c0, ck, p = _costs(inst)
    if variant == "rewritten":
        return np.array([float(Fraction(a) - b) for a, b in
                         zip(inst.first_stage_costs, inst.expected_cost)])
    coef = c0.copy()
    for k in range(inst.K):
        coef = coef - p[k] * ck[k]
    return coef


def _obj_sdc1(blocks, inst, n, variant):
    c0, ck, p = _costs(inst)
    ae = _arc_edges(inst.graph)
    obj = np.zeros(n)
    obj[blocks["x0"]] = c0
    for k in range(inst.K):
        obj[blocks["zk"][k]] = p[k] * ck[k][ae]
    return obj


def _obj_sdc2(blocks, inst, n, variant):
    c0, ck, p = _costs(inst)
    ae = _arc_edges(inst.graph)
    obj = np.zeros(n)
    obj[blocks["x0"]] = _first_stage_coef(inst, variant)
    for k in range(inst.K):
        obj[blocks["yk"][k]] = p[k] * ck[k][ae]
    return obj


def _obj_dc1(blocks, inst, n, variant):
    c0, ck, p = _costs(inst)
    ae = _arc_edges(inst.graph)
    obj = np.zeros(n)
    obj[blocks["z0"]] = c0[ae]
    for k in range(inst.K):
        obj[blocks["zk"][k]] = p[k] * ck[k][ae]
    return obj


def _obj_dc2(blocks, inst, n, variant):
    c0, ck, p = _costs(inst)
    ae = _arc_edges(inst.graph)
    obj = np.zeros(n)
    obj[blocks["z0"]] = _first_stage_coef(inst, variant)[ae]
    for k in range(inst.K):
        obj[blocks["yk"][k]] = p[k] * ck[k][ae]
    return obj


_OBJECTIVES = {
    FormulationId.UC: _obj_uc,
    FormulationId.UF: _obj_uc,
    FormulationId.SDC1: _obj_sdc1,
    FormulationId.SDC2: _obj_sdc2,
    FormulationId.SDC2STAR: _obj_sdc2,
    FormulationId.SDF: _obj_sdc2,
    FormulationId.DC1: _obj_dc1,
    FormulationId.DC2: _obj_dc2,
    FormulationId.DC2STAR: _obj_dc2,
    FormulationId.DF: _obj_dc2,
}


def _finish(fid, inst, model, blocks, oracles, first_stage, variant) -> ModelSpec:
    spec = ModelSpec(fid, inst, model, blocks, oracles, np.asarray(first_stage, dtype=int), variant)
    model.set_objective(spec.objective_for(inst))
    return spec


# -- SSTP builders ---------------------------------------------------------------

def build_uc(instance: StochasticInstance) -> ModelSpec:
    fid = FormulationId.UC
    _require_sstp(instance, fid)
    g = instance.graph
    model = LpModel()
    x0 = _add_edge_block(model, "x0", g)
    xk = np.array([_add_edge_block(model, f"xk[{k + 1}]", g) for k in range(instance.K)],
                  dtype=int).reshape(instance.K, g.edge_count)
    ae = _arc_edges(g)
    oracle = ScenarioCutOracle(instance, UCUT, [[x0[ae], xk[k][ae]] for k in range(instance.K)])
    return _finish(fid, instance, model, {"x0": x0, "xk": xk}, [oracle], x0, "printed")


def _add_scenario_flows(model, instance, cap_rows) -> dict:
    """Flow block ``f[k][t]`` with conservation rows; ``cap_rows(k, a, fvar)``
    adds the capacity row of one flow variable."""
    g = instance.graph
    flows = {}
    for k in range(instance.K):
        r = instance.roots[k]
        for t in sorted(instance.derived.rooted_terminals[k]):
            f = np.array([model.add_var(f"f[{k + 1}][{t + 1}][{_arc_label(g, a)}]")
                          for a in range(g.arc_count)], dtype=int)
            flows[(k, t)] = f
            _conservation(model, g, f, r, t, f"[{k + 1}][{t + 1}]")
            for a in range(g.arc_count):
                cap_rows(k, a, f[a], t)
    return flows


def build_uf(instance: StochasticInstance) -> ModelSpec:
    fid = FormulationId.UF
    _require_sstp(instance, fid)
    g = instance.graph
    model = LpModel()
    x0 = _add_edge_block(model, "x0", g)
    xk = np.array([_add_edge_block(model, f"xk[{k + 1}]", g) for k in range(instance.K)],
                  dtype=int).reshape(instance.K, g.edge_count)

    def cap(k, a, fa, t):
        e = g.arc_to_edge(a)
        model.add_row(_row({int(x0[e]): 1.0, int(xk[k][e]): 1.0, int(fa): -1.0}, ">=", 0.0,
                           f"cap[{k + 1}][{t + 1}][{_arc_label(g, a)}]"))

    flows = _add_scenario_flows(model, instance, cap)
    return _finish(fid, instance, model, {"x0": x0, "xk": xk, "f": flows}, [], x0, "printed")


def _sec2(model, graph, block, label, extra=()) -> None:
    for e in range(graph.edge_count):
        coefs: dict = {}
        for b in (block,) + tuple(extra):
            _add(coefs, b[graph.forward(e)], 1.0)
            _add(coefs, b[graph.backward(e)], 1.0)
        model.add_row(_row(coefs, "<=", 1.0, f"sec2{label}[{e + 1}]"))


def build_sdc1(instance: StochasticInstance) -> ModelSpec:
    fid = FormulationId.SDC1
    _require_sstp(instance, fid)
    g = instance.graph
    model = LpModel()
    x0 = _add_edge_block(model, "x0", g)
    zk = np.array([_add_arc_block(model, f"zk[{k + 1}]", g) for k in range(instance.K)],
                  dtype=int).reshape(instance.K, g.arc_count)
    for k in range(instance.K):
        _sec2(model, g, zk[k], f"[{k + 1}]")
    ae = _arc_edges(g)
    oracle = ScenarioCutOracle(instance, SEMI_CUT, [[x0[ae], zk[k]] for k in range(instance.K)])
    return _finish(fid, instance, model, {"x0": x0, "zk": zk}, [oracle], x0, "printed")


def _linked_y(model, instance):
    g = instance.graph
    x0 = _add_edge_block(model, "x0", g)
    yk = np.array([_add_arc_block(model, f"yk[{k + 1}]", g) for k in range(instance.K)],
                  dtype=int).reshape(instance.K, g.arc_count)
    for k in range(instance.K):
        for e in range(g.edge_count):
            model.add_row(_row({int(yk[k][g.forward(e)]): 1.0, int(yk[k][g.backward(e)]): 1.0,
                                int(x0[e]): -1.0}, ">=", 0.0, f"link[{k + 1}][{e + 1}]"))
    return x0, yk


def build_sdc2(instance: StochasticInstance, rewrite_objective: bool = False) -> ModelSpec:
    fid = FormulationId.SDC2STAR if rewrite_objective else FormulationId.SDC2
    _require_sstp(instance, fid)
    g = instance.graph
    model = LpModel()
    x0, yk = _linked_y(model, instance)
    for k in range(instance.K):
        _sec2(model, g, yk[k], f"[{k + 1}]")
    oracle = ScenarioCutOracle(instance, DIR_CUT, [[yk[k]] for k in range(instance.K)])
    return _finish(fid, instance, model, {"x0": x0, "yk": yk}, [oracle], x0,
                   "rewritten" if rewrite_objective else "printed")


def build_sdf(instance: StochasticInstance) -> ModelSpec:
    fid = FormulationId.SDF
    _require_sstp(instance, fid)
    g = instance.graph
    model = LpModel()
    x0, yk = _linked_y(model, instance)

    def cap(k, a, fa, t):
        model.add_row(_row({int(yk[k][a]): 1.0, int(fa): -1.0}, ">=", 0.0,
                           f"cap[{k + 1}][{t + 1}][{_arc_label(g, a)}]"))

    flows = _add_scenario_flows(model, instance, cap)
    return _finish(fid, instance, model, {"x0": x0, "yk": yk, "f": flows}, [], x0, "printed")


# -- rSSTP builders --------------------------------------------------------------

def _first_stage_indegree(model, instance, z0) -> None:
    g = instance.graph
    for v in range(g.vertex_count):
        if v == instance.global_root:
            continue
        model.add_row(_row({int(z0[a]): 1.0 for a in g.in_arcs[v]}, "<=", 1.0,
                           f"indeg0[{v + 1}]"))


def build_dc1(instance: StochasticInstance) -> ModelSpec:
    fid = FormulationId.DC1
    _require_rooted(instance, fid)
    g = instance.graph
    model = LpModel()
    z0 = _add_arc_block(model, "z0", g)
    zk = np.array([_add_arc_block(model, f"zk[{k + 1}]", g) for k in range(instance.K)],
                  dtype=int).reshape(instance.K, g.arc_count)
    for k in range(instance.K):
        for a in range(g.arc_count):
            model.add_row(_row({int(z0[a]): 1.0, int(zk[k][a]): 1.0}, "<=", 1.0,
                               f"excl[{k + 1}][{_arc_label(g, a)}]"))
    _first_stage_indegree(model, instance, z0)
    oracles = [TreeCutOracle(instance, z0),
               ScenarioCutOracle(instance, SEMI_CUT, [[z0, zk[k]] for k in range(instance.K)])]
    return _finish(fid, instance, model, {"z0": z0, "zk": zk}, oracles, z0, "printed")


def _linked_z(model, instance):
    g = instance.graph
    z0 = _add_arc_block(model, "z0", g)
    yk = np.array([_add_arc_block(model, f"yk[{k + 1}]", g) for k in range(instance.K)],
                  dtype=int).reshape(instance.K, g.arc_count)
    for k in range(instance.K):
        for a in range(g.arc_count):
            model.add_row(_row({int(yk[k][a]): 1.0, int(z0[a]): -1.0}, ">=", 0.0,
                               f"link[{k + 1}][{_arc_label(g, a)}]"))
    return z0, yk


def build_dc2(instance: StochasticInstance, rewrite_objective: bool = False) -> ModelSpec:
    fid = FormulationId.DC2STAR if rewrite_objective else FormulationId.DC2
    _require_rooted(instance, fid)
    model = LpModel()
    z0, yk = _linked_z(model, instance)
    _first_stage_indegree(model, instance, z0)
    oracles = [TreeCutOracle(instance, z0),
               ScenarioCutOracle(instance, DIR_CUT, [[yk[k]] for k in range(instance.K)])]
    return _finish(fid, instance, model, {"z0": z0, "yk": yk}, oracles, z0,
                   "rewritten" if rewrite_objective else "printed")


def build_df(instance: StochasticInstance) -> ModelSpec:
    fid = FormulationId.DF
    _require_rooted(instance, fid)
    g = instance.graph
    r = instance.global_root
    model = LpModel()
    z0, yk = _linked_z(model, instance)
    others = [v for v in range(g.vertex_count) if v != r]
    w0 = {v: model.add_var(f"w0[{v + 1}]", integer=True) for v in others}
    f0 = {}
    for v in others:
        f = np.array([model.add_var(f"f0[{v + 1}][{_arc_label(g, a)}]")
                      for a in range(g.arc_count)], dtype=int)
        f0[v] = f
        for a in range(g.arc_count):
            model.add_row(_row({int(z0[a]): 1.0, int(f[a]): -1.0}, ">=", 0.0,
                               f"cap0[{v + 1}][{_arc_label(g, a)}]"))
        coefs = {w0[v]: 1.0}
        for a in g.in_arcs[v]:
            _add(coefs, z0[a], -1.0)
        model.add_row(_row(coefs, ">=", 0.0, f"node[{v + 1}]"))
        _conservation(model, g, f, r, v, f"0[{v + 1}]", amount=w0[v])

    def cap(k, a, fa, t):
        model.add_row(_row({int(yk[k][a]): 1.0, int(fa): -1.0}, ">=", 0.0,
                           f"cap[{k + 1}][{t + 1}][{_arc_label(g, a)}]"))

    flows = _add_scenario_flows(model, instance, cap)
    first = list(z0) + [w0[v] for v in others]
    return _finish(fid, instance, model,
                   {"z0": z0, "yk": yk, "w0": w0, "f0": f0, "f": flows}, [], first, "printed")


BUILDERS = {
    FormulationId.UC: build_uc,
    FormulationId.UF: build_uf,
    FormulationId.SDC1: build_sdc1,
    FormulationId.SDC2: lambda inst: build_sdc2(inst, False),
    FormulationId.SDC2STAR: lambda inst: build_sdc2(inst, True),
    FormulationId.SDF: build_sdf,
    FormulationId.DC1: build_dc1,
    FormulationId.DC2: lambda inst: build_dc2(inst, False),
    FormulationId.DC2STAR: lambda inst: build_dc2(inst, True),
    FormulationId.DF: build_df,
}


def build(formulation, instance: StochasticInstance, objective: Optional[str] = None) -> ModelSpec:
    """Build by id. ``objective="rewritten"`` turns sdc2/dc2 into their starred forms."""
    fid = formulation if isinstance(formulation, FormulationId) else FormulationId.parse(formulation)
    if objective not in (None, "printed", "rewritten"):
        raise ValueError("objective must be 'printed' or 'rewritten'")
    if objective == "rewritten":
        fid = {FormulationId.SDC2: FormulationId.SDC2STAR,
               FormulationId.DC2: FormulationId.DC2STAR}.get(fid, fid)
    if fid.rooted:
        _require_rooted(instance, fid)
    elif instance.rooted:
        raise FormulationError(f"{fid.value} is an SSTP model; the instance is rooted")
    return BUILDERS[fid](instance)


# -- valid inequalities ------------------------------------------------------------

def _scenario_arc_terms(spec: ModelSpec, k: int) -> list[np.ndarray]:
    """Arc blocks whose sum is the scenario's full arborescence."""
    b = spec.blocks
    if "yk" in b:
        return [b["yk"][k]]
    if spec.formulation is FormulationId.DC1:
        return [b["z0"], b["zk"][k]]
    if spec.formulation is FormulationId.SDC1:
        return [b["zk"][k]]
    raise FormulationError(f"{spec.formulation.value}: no arc variables")


def _degree_row(graph, terms, arcs, sign=1.0) -> dict:
    coefs: dict = {}
    for a in arcs:
        for t in terms:
            _add(coefs, t[a], sign)
    return coefs


def add_valid_inequalities(spec: ModelSpec, instance: Optional[StochasticInstance] = None) -> ModelSpec:
    """Copy of ``spec`` with the arborescence degree rows added per scenario
    (and for rooted models, on the first-stage arcs).

    On sdc1 the scenario arcs only hold the part of the tree not bought in
    the first stage, so only the rows that stay valid for that part are added.
    """
    instance = instance or spec.instance
    if spec.formulation in (FormulationId.UC, FormulationId.UF):
        raise FormulationError(f"{spec.formulation.value}: no arc variables")
    out = spec.copy()
    model = out.model
    g = instance.graph
    partial = spec.formulation is FormulationId.SDC1
    for k in range(instance.K):
        terms = _scenario_arc_terms(spec, k)
        r = instance.roots[k]
        tk = instance.derived.rooted_terminals[k]
        lab = f"[{k + 1}]"
        _sec2(model, g, terms[0], "vi" + lab, extra=terms[1:])
        model.add_row(_row(_degree_row(g, terms, g.in_arcs[r]), "=", 0.0, f"rootin{lab}"))
        for v in range(g.vertex_count):
            if v == r:
                continue
            coefs = _degree_row(g, terms, g.in_arcs[v])
            if v in tk and not partial:
                model.add_row(_row(coefs, "=", 1.0, f"termin{lab}[{v + 1}]"))
            else:
                model.add_row(_row(coefs, "<=", 1.0, f"indeg{lab}[{v + 1}]"))
        if tk and not partial:
            model.add_row(_row(_degree_row(g, terms, g.out_arcs[r]), ">=", 1.0, f"rootout{lab}"))
    if "z0" in spec.blocks:
        z0 = spec.blocks["z0"]
        r = instance.global_root
        _sec2(model, g, z0, "vi0")
        model.add_row(_row(_degree_row(g, [z0], g.in_arcs[r]), "=", 0.0, "rootin0"))
        for v in range(g.vertex_count):
            if v != r:
                model.add_row(_row(_degree_row(g, [z0], g.in_arcs[v]), "<=", 1.0,
                                   f"indegvi0[{v + 1}]"))
    out.extras = spec.extras + ("vi",)
    return out


def add_flow_balance(spec: ModelSpec, stage: str) -> ModelSpec:
    """Copy of ``spec`` with out-degree >= in-degree rows at non-terminals.

    ``stage="first"`` puts them on the first-stage arcs of a rooted model
    (whose only first-stage terminal is the root); ``stage="scenario"`` puts
    them on each scenario's arborescence for vertices outside ``T^k``.
    """
    g = spec.instance.graph
    out = spec.copy()
    model = out.model
    if stage == "first":
        if "z0" not in spec.blocks:
            raise FormulationError("first-stage flow balance needs directed first-stage arcs")
        z0 = spec.blocks["z0"]
        for v in range(g.vertex_count):
            if v == spec.instance.global_root:
                continue
            coefs = _degree_row(g, [z0], g.out_arcs[v])
            for a in g.in_arcs[v]:
                _add(coefs, z0[a], -1.0)
            model.add_row(_row(coefs, ">=", 0.0, f"balance0[{v + 1}]"))
    elif stage == "scenario":
        for k, sc in enumerate(spec.instance.scenarios):
            terms = _scenario_arc_terms(spec, k)
            for v in range(g.vertex_count):
                if v in sc.terminals:
                    continue
                coefs = _degree_row(g, terms, g.out_arcs[v])
                for a in g.in_arcs[v]:
                    for t in terms:
                        _add(coefs, t[a], -1.0)
                model.add_row(_row(coefs, ">=", 0.0, f"balance[{k + 1}][{v + 1}]"))
    else:
        raise ValueError("stage must be 'first' or 'scenario'")
    out.extras = spec.extras + (f"balance-{stage}",)
    return out


def flow_balance_invalidity_demo(instance: StochasticInstance, stage: Optional[str] = None,
                                 formulation=None, backend: Optional[str] = None) -> dict:
    """Integer optima with and without the flow-balance rows.

    Defaults: first-stage rows on dc2 for rooted instances, scenario rows on
    sdc2 otherwise.
    """
    from .separation import solve_spec

    if stage is None:
        stage = "first" if instance.rooted else "scenario"
    if formulation is None:
        formulation = FormulationId.DC2 if instance.rooted else FormulationId.SDC2
    spec = build(formulation, instance)
    plain, _ = solve_spec(spec, "integer", backend)
    balanced, _ = solve_spec(add_flow_balance(spec, stage), "integer", backend)
    return {"with": balanced.objective, "without": plain.objective}


# -- projection to edge sets -----------------------------------------------------

def project_edges(spec: ModelSpec, x) -> tuple[np.ndarray, np.ndarray]:
    """Edge-space image ``(x0, xk)`` of a point of any model."""
    x = np.asarray(x, dtype=float)
    g = spec.instance.graph
    K = spec.instance.K
    b = spec.blocks
    fwd = np.arange(g.edge_count) * 2
    bwd = fwd + 1

    def undirect(block):
        return x[block[fwd]] + x[block[bwd]]

    fid = spec.formulation
    if "x0" in b:
        x0 = x[b["x0"]]
    else:
        x0 = undirect(b["z0"])
    if "xk" in b:
        xk = x[b["xk"]]
    elif fid in (FormulationId.SDC1, FormulationId.DC1):
        xk = np.array([undirect(b["zk"][k]) for k in range(K)])
    else:
        xk = np.array([undirect(b["yk"][k]) - x0 for k in range(K)])
    return x0, xk.reshape(K, g.edge_count)


def edge_sets(spec: ModelSpec, x) -> tuple[frozenset, tuple[frozenset, ...]]:
    x0, xk = project_edges(spec, x)
    e0 = frozenset(int(e) for e in np.flatnonzero(x0 > 0.5))
    ek = tuple(frozenset(int(e) for e in np.flatnonzero(row > 0.5)) for row in xk)
    return e0, ek
