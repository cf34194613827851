"""Command-line entry point: ``stochsteiner {solve,relax,compare,verify-paper,gen}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import fixtures
from .experiments import COST_REGIMES, PERTURBATIONS, compare, generate_random_instance
from .formulations import FormulationError, FormulationId, add_valid_inequalities, build
from .instance import StochasticInstance
from .io import InstanceParseError, read_instance, write_instance, write_report
from .lp import BACKENDS
from .separation import solve_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMULATION_IDS = [f.value for f in FormulationId]


class UsageError(Exception):
    pass


def _load(path: str) -> StochasticInstance:
    """Read an instance file; a bare fixture name (``fig1``, ``fig3.sstp``) that is
    not an existing path loads the bundled copy."""
    p = Path(path)
    if p.exists():
        return read_instance(p)
    stem = p.name.split(".")[0]
    if stem in fixtures.NAMES:
        return fixtures.load(stem)
    raise UsageError(f"no such instance file: {path}")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _instance_for(args) -> StochasticInstance:
    inst = _load(args.instance)
    fid = FormulationId.parse(args.formulation) if getattr(args, "formulation", None) else None
    rooted = args.rooted or (fid is not None and fid.rooted)
    if rooted and not inst.rooted:
        if args.root is None:
            raise UsageError("instance has no global root; pass --root V")
        inst = inst.rooted_at(args.root - 1)
    if args.rooted and fid is not None and not fid.rooted:
        raise UsageError(f"{fid.value} is an SSTP model and cannot be used with --rooted")
    return inst


def _cmd_solve(args, mode: str) -> int:
    inst = _instance_for(args)
    spec = build(args.formulation, inst, args.objective)
    if args.with_valid_inequalities:
        spec = add_valid_inequalities(spec)
    report, work = solve_spec(spec, mode, args.lp_backend, args.node_limit)
    if not args.timing:
        report.wall_time = None
    _emit(write_report(report), args.out)
    if args.dump_lp:
        Path(args.dump_lp).write_text(work.model.to_lp_format(), encoding="utf-8")
    return EXIT_OK if report.status == "optimal" else EXIT_FAIL


def cmd_solve(args) -> int:
    return _cmd_solve(args, "first_stage_relaxed" if args.relax_first_stage else "integer")


def cmd_relax(args) -> int:
    return _cmd_solve(args, "first_stage_relaxed" if args.relax_first_stage else "lp")


def cmd_compare(args) -> int:
    inst = _load(args.instance)
    if args.rooted and not inst.rooted:
        if args.root is None:
            raise UsageError("instance has no global root; pass --root V")
        inst = inst.rooted_at(args.root - 1)
    fids = args.formulations.split(",") if args.formulations else None
    table = compare(inst, fids, perturbations=args.perturbations, seed=args.seed,
                    integer=args.integer, backend=args.lp_backend)
    text = table.to_json(args.timing) if args.format == "json" else table.to_tsv(args.timing)
    _emit(text, args.out)
    return EXIT_OK if table.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    from .verify import run_claims

    results = run_claims(args.lp_backend)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.detail})" for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} claims passed")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def cmd_gen(args) -> int:
    inst = generate_random_instance(args.seed, args.vertices, args.edge_prob, args.scenarios,
                                    args.cost_regime, args.rooted, args.max_edges)
    _emit(write_instance(inst), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stochsteiner",
                                     description="Stochastic Steiner tree formulation workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formulation=True):
        p.add_argument("instance", help="instance file, or a bundled fixture name such as fig1")
        if formulation:
            p.add_argument("--formulation", "-f", required=True, choices=FORMULATION_IDS)
            p.add_argument("--relax-first-stage", action="store_true",
                           help="keep only the second stage integral")
            p.add_argument("--with-valid-inequalities", action="store_true")
            p.add_argument("--objective", choices=["printed", "rewritten"], default=None)
            p.add_argument("--dump-lp", metavar="PATH",
                           help="write the final model (with cuts) in LP format")
            p.add_argument("--node-limit", type=int, default=100000)
        p.add_argument("--rooted", action="store_true", help="treat the instance as rSSTP")
        p.add_argument("--root", type=int, default=None,
                       help="global root (1-based) when the file has none")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", "-o", help="write the report here instead of stdout")
        p.add_argument("--lp-backend", choices=BACKENDS, default=None)
        p.add_argument("--timing", action="store_true", help="include wall-clock times")

    p = sub.add_parser("solve", help="integer optimum by branch-and-cut")
    common(p)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("relax", help="LP bound by cutting planes")
    common(p)
    p.set_defaults(func=cmd_relax)
    p = sub.add_parser("compare", help="LP bounds of several formulations with hierarchy checks")
    common(p, formulation=False)
    p.add_argument("--formulations", help="comma-separated ids (default: all applicable)")
    p.add_argument("--perturbations", type=int, default=PERTURBATIONS)
    p.add_argument("--integer", action="store_true", help="also compute integer optima")
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.set_defaults(func=cmd_compare)
    p = sub.add_parser("verify-paper", help="check the worked examples on the bundled fixtures")
    p.add_argument("--out", "-o")
    p.add_argument("--lp-backend", choices=BACKENDS, default=None)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--scenarios", type=int, default=2)
    p.add_argument("--cost-regime", choices=COST_REGIMES, default="unconstrained")
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--rooted", action="store_true")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InstanceParseError, FormulationError, OSError) as exc:
        print(f"stochsteiner: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RuntimeError, ArithmeticError) as exc:
        print(f"stochsteiner: solver failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
