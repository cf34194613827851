"""Instance files and JSON solve reports.

Instance format (UTF-8, ``#`` starts a comment, vertices/edges 1-based)::

    SECTION Graph
    Nodes 4
    Edges 3
    E 1 2 1          # endpoints and first-stage cost
    ...
    END
    SECTION Scenario # repeated once per scenario
    Probability 1/2
    Root 1           # optional root hint
    Terminals 1 4
    SE 1 11          # edge index and scenario cost; omitted edges reuse c0
    END
    SECTION Root 1   # optional, rooted instances only
    END
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .instance import Graph, Scenario, StochasticInstance, validate

REPORT_SCHEMA = 1


class InstanceParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def _number(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InstanceParseError(line, f"not a number: {tok!r}") from None


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceParseError(line, f"not an integer: {tok!r}") from None


def parse_instance(text: str, name: str = "") -> StochasticInstance:
    lines = text.splitlines()
    section: Optional[str] = None
    nodes = None
    declared_edges = None
    edges: list[tuple[int, int]] = []
    c0: list[Fraction] = []
    scenarios: list[dict] = []
    root = None
    last_line = max(len(lines), 1)

    def vertex(tok, ln):
        v = _int(tok, ln)
        if nodes is None:
            raise InstanceParseError(ln, "vertex referenced before Nodes")
        if not 1 <= v <= nodes:
            raise InstanceParseError(ln, f"vertex {v} out of range 1..{nodes}")
        return v - 1

    for ln, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        tok = body.split()
        key = tok[0].upper()
        if section is None:
            if key == "EOF":
                break
            if key != "SECTION" or len(tok) < 2:
                raise InstanceParseError(ln, f"expected SECTION, got {tok[0]!r}")
            section = tok[1].lower()
            if section == "graph":
                if nodes is not None:
                    raise InstanceParseError(ln, "duplicate Graph section")
            elif section == "scenario":
                scenarios.append({"line": ln, "p": None, "root": None, "terminals": None, "costs": {}})
            elif section == "root":
                if len(tok) >= 3:
                    root = (ln, tok[2])
            else:
                raise InstanceParseError(ln, f"unknown section {tok[1]!r}")
            continue
        if key == "END":
            section = None
            continue
        if section == "graph":
            if key == "NODES":
                nodes = _int(tok[1], ln) if len(tok) == 2 else None
                if nodes is None or nodes <= 0:
                    raise InstanceParseError(ln, "Nodes expects one positive integer")
            elif key == "EDGES":
                if len(tok) != 2:
                    raise InstanceParseError(ln, "Edges expects one integer")
                declared_edges = _int(tok[1], ln)
            elif key == "E":
                if len(tok) != 4:
                    raise InstanceParseError(ln, "edge line must be 'E i j c0'")
                i, j = vertex(tok[1], ln), vertex(tok[2], ln)
                if i == j:
                    raise InstanceParseError(ln, "self-loop")
                edges.append((i, j))
                c0.append(_number(tok[3], ln))
            else:
                raise InstanceParseError(ln, f"unknown Graph entry {tok[0]!r}")
        elif section == "scenario":
            sc = scenarios[-1]
            if key == "PROBABILITY":
                if len(tok) != 2:
                    raise InstanceParseError(ln, "Probability expects one value")
                p = _number(tok[1], ln)
                if not 0 < p <= 1:
                    raise InstanceParseError(ln, f"probability {tok[1]} outside (0,1]")
                sc["p"] = p
            elif key == "ROOT":
                sc["root"] = vertex(tok[1], ln)
            elif key == "TERMINALS":
                sc["terminals"] = frozenset(vertex(t, ln) for t in tok[1:])
            elif key == "SE":
                if len(tok) != 3:
                    raise InstanceParseError(ln, "scenario cost line must be 'SE e ck'")
                e = _int(tok[1], ln)
                if not 1 <= e <= len(edges):
                    raise InstanceParseError(ln, f"scenario cost references nonexistent edge {e}")
                sc["costs"][e - 1] = _number(tok[2], ln)
            else:
                raise InstanceParseError(ln, f"unknown Scenario entry {tok[0]!r}")
        elif section == "root":
            if key == "ROOT" and len(tok) == 2:
                root = (ln, tok[1])
            else:
                raise InstanceParseError(ln, f"unknown Root entry {tok[0]!r}")

    if section is not None:
        raise InstanceParseError(last_line, f"missing END for {section} section")
    if nodes is None:
        raise InstanceParseError(1 if not text.strip() else last_line, "missing Graph section")
    if declared_edges is not None and declared_edges != len(edges):
        raise InstanceParseError(last_line, f"Edges declares {declared_edges}, found {len(edges)}")
    if not scenarios:
        raise InstanceParseError(last_line, "no Scenario section")
    built = []
    for sc in scenarios:
        if sc["p"] is None:
            raise InstanceParseError(sc["line"], "scenario without Probability")
        if not sc["terminals"]:
            raise InstanceParseError(sc["line"], "scenario without Terminals")
        costs = tuple(sc["costs"].get(e, c0[e]) for e in range(len(edges)))
        built.append(Scenario(sc["p"], costs, sc["terminals"], sc["root"]))
    global_root = vertex(root[1], root[0]) if root is not None else None
    inst = StochasticInstance(Graph(nodes, tuple(edges)), tuple(c0), tuple(built), global_root, name)
    problems = validate(inst)
    if problems:
        raise InstanceParseError(last_line, "; ".join(problems))
    return inst


def write_instance(instance: StochasticInstance) -> str:
    g = instance.graph
    out = ["SECTION Graph", f"Nodes {g.vertex_count}", f"Edges {g.edge_count}"]
    for (i, j), c in zip(g.edges, instance.first_stage_costs):
        out.append(f"E {i + 1} {j + 1} {c}")
    out.append("END")
    for s in instance.scenarios:
        out.append("")
        out.append("SECTION Scenario")
        out.append(f"Probability {s.probability}")
        if s.root_hint is not None:
            out.append(f"Root {s.root_hint + 1}")
        out.append("Terminals " + " ".join(str(t + 1) for t in sorted(s.terminals)))
        for e, c in enumerate(s.edge_costs):
            out.append(f"SE {e + 1} {c}")
        out.append("END")
    if instance.global_root is not None:
        out.append("")
        out.append(f"SECTION Root {instance.global_root + 1}")
        out.append("END")
    return "\n".join(out) + "\n"


def read_instance(path) -> StochasticInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), name=str(path))


def report_dict(report) -> dict:
    doc = {
        "schema": REPORT_SCHEMA,
        "formulation": report.formulation,
        "bound_type": report.bound_type,
        "status": report.status,
    }
    if report.status == "optimal" or (report.status == "iteration_limit" and report.values is not None):
        doc["objective"] = round(float(report.objective), 9)
        doc["values"] = {
            name: round(float(v), 9)
            for name, v in zip(report.names, report.values)
            if abs(v) > 1e-9
        }
    doc["cuts"] = dict(sorted(report.cuts.items()))
    doc["rounds"] = report.rounds
    doc["nodes"] = report.nodes
    if report.wall_time is not None:
        doc["wall_time"] = round(report.wall_time, 6)
    return doc


def write_report(report) -> str:
    """Serialize a :class:`~stochsteiner.lp.SolveReport` as JSON with stable key order."""
    return json.dumps(report_dict(report), indent=2, sort_keys=True) + "\n"
