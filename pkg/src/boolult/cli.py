"""Command line front end.

    boolult eval        --scenario FILE
    boolult ultrapower  --scenario FILE
    boolult demo-omega  [--depth K] [--samples N]

Exit codes: 0 every check passed, 1 some check failed, 2 bad input,
3 size guard.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .fol.generate import formula_sample
from .fol.parser import FormulaSyntaxError, to_text
from .fol.structure import UnassignedVariableError, check_laws, value_table
from .fol.syntax import SignatureError, free_vars
from .kernel.algebra import Element, SizeGuardError, atom_limit
from .kernel.ideals import ImproperIdealError
from .names.hf import hf_of_rank_at_most
from .names.pool import PoolError
from .omega import illfoundedness_witness, rectangle_failure_demo, witness_suite
from .scenario import ScenarioError, guard, load_scenario, table_axes
from .ultra import (
    DirectLimitSystem, degree_of_genericity, extender_rep, fiber_check,
    generic_triviality_check, los_check, poset_diagnostics, presentations_iso,
    quotient_model, selector_check,
)

SCHEMA = "boolult.report/1"
PRESENTATION_ATOM_LIMIT = 3


def _element_json(e: Element) -> dict:
    return {"atoms": list(e.atoms), "text": repr(e), "is_one": e.is_one, "is_zero": e.is_zero}


def _pool_eval(sc, phi):
    fv = sorted(free_vars(phi))
    missing = [v for v in fv if v not in sc.params]
    if missing:
        raise UnassignedVariableError(f"unassigned free variables: {missing}")
    S = sc.pool.structure()
    table = value_table(S, phi, fv)
    pos = tuple(sc.pool.position(sc.params[v]) for v in fv)
    return Element(sc.algebra, int(table[pos]))


def _structure_eval(sc, phi):
    fv = sorted(free_vars(phi))
    missing = [v for v in fv if v not in sc.params]
    if missing:
        raise UnassignedVariableError(f"unassigned free variables: {missing}")
    S = sc.structure
    table = value_table(S, phi, fv)
    pos = tuple(S.index(sc.params[v]) for v in fv)
    return Element(sc.algebra, int(table[pos]))


def cmd_eval(sc, args) -> tuple[dict, bool]:
    if sc.structure is not None:
        S, evaluate, size = sc.structure, _structure_eval, sc.structure.size
    else:
        S, evaluate, size = sc.pool.structure(), _pool_eval, len(sc.pool)
    for phi in sc.formulas:
        guard(sc.algebra.n_atoms, size, table_axes(phi))
    results = []
    for text, phi in zip(sc.formula_text, sc.formulas):
        results.append({"formula": text, "parsed": to_text(phi), "value": _element_json(evaluate(sc, phi))})
    laws = check_laws(S)
    warnings = [f"{v.law} fails" for v in laws.violations]
    report = {
        "command": "eval",
        "algebra": {"atoms": sc.algebra.n_atoms},
        "universe_size": size,
        "universe": "explicit structure" if sc.structure is not None else "name pool",
        "results": results,
        "laws": {"ok": laws.ok, "failed": laws.laws_failed(),
                 "violations": [v.to_json(list(map(str, getattr(S, "names", ())))) for v in laws.violations]},
        "warnings": warnings,
    }
    return report, laws.ok


def _family(sc):
    if sc.antichains:
        return sc.antichains
    return list(sc.algebra.maximal_antichains())


def cmd_ultrapower(sc, args) -> tuple[dict, bool]:
    if sc.pool is None:
        raise ScenarioError("the ultrapower needs a name pool, not an explicit structure")
    B = sc.algebra
    n = len(sc.pool)
    sample = formula_sample(args.samples, max_depth=args.depth, seed=args.seed) if args.samples else []
    formulas = list(sc.formulas) + list(sample)
    for phi in formulas:
        guard(B.n_atoms, n, table_axes(phi), "Łoś sweep")
    values = hf_of_rank_at_most(min(sc.pool_rank, 2))
    ok = True
    per_u = []
    for U in sc.ultrafilters:
        model = quotient_model(sc.pool, U)
        plain = los_check(model, formulas)
        rel = los_check(model, formulas, relativized=True)
        fib = fiber_check(model, formulas)
        triv = generic_triviality_check(model)
        deg = degree_of_genericity(U)
        entry = {
            "ultrafilter": U.to_json(),
            "classes": model.size,
            "vcheck_classes": int(np.count_nonzero(model.vcheck)),
            "los": plain.to_json(),
            "los_relativized": rel.to_json(),
            "fiber": fib.to_json(),
            "triviality": triv.to_json(),
            "degree_of_genericity": deg,
            "verdict": "trivial ultrapower (generic)" if triv.isomorphism else "nontrivial",
        }
        good = plain.ok and rel.ok and fib.ok and triv.isomorphism
        if B.n_atoms <= PRESENTATION_ATOM_LIMIT:
            pres = presentations_iso(B, U, values)
            system = DirectLimitSystem(B, U, _family(sc), values)
            lim = system.verify()
            ext = [extender_rep(system, x).round_trip for x in range(system.limit_size)]
            sel = [selector_check(B, U, A)["ok"] for A in system.family]
            entry["presentations"] = pres.to_json()
            entry["direct_limit"] = lim.to_json()
            entry["direct_limit"]["antichains"] = len(system.family)
            entry["extender_round_trips"] = {"checked": len(ext), "ok": all(ext)}
            entry["selector"] = {"checked": len(sel), "ok": all(sel)}
            good = good and pres.ok and lim.ok and all(ext) and all(sel)
        else:
            entry["presentations"] = {"skipped": f"more than {PRESENTATION_ATOM_LIMIT} atoms"}
            entry["direct_limit"] = {"skipped": f"more than {PRESENTATION_ATOM_LIMIT} atoms"}
        entry["ok"] = good
        ok = ok and good
        per_u.append(entry)
    report = {
        "command": "ultrapower",
        "algebra": {"atoms": B.n_atoms},
        "pool_size": n,
        "pool_rank": sc.pool_rank,
        "formulas": {"declared": len(sc.formulas), "sampled": len(sample),
                     "depth": args.depth, "seed": args.seed},
        "ultrafilters": per_u,
    }
    if sc.poset is not None:
        P = sc.poset
        diags = [poset_diagnostics(P, F) for F in P.maximal_filters()]
        report["poset"] = {"nodes": len(P), "separative": P.is_separative(),
                           "maximal_filters": [d.to_json() for d in diags]}
        ok = ok and all(d.consistent for d in diags)
    return report, ok


def cmd_demo_omega(args) -> tuple[dict, bool]:
    w = witness_suite(bound=max(50, args.depth))
    ill = illfoundedness_witness(args.depth, bound=50)
    rect = rectangle_failure_demo(args.samples, seed=args.seed)
    report = {"command": "demo-omega", "witness_suite": w, "illfoundedness": ill, "rectangle": rect}
    return report, bool(w["ok"] and ill["ok"] and rect["ok"])


# ---------------------------------------------------------------- output

def _text_lines(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}{str(k).ljust(width)}  {_scalar(v)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, (dict, list)) and not _flat(v):
                out.append(f"{pad}[{i}]")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(pad + _scalar(obj))
    return out


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)
    lines = [f"{report['command']}: {'PASS' if report['ok'] else 'FAIL'}"]
    lines += _text_lines({k: v for k, v in report.items() if k not in ("command", "ok", "schema")})
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="boolult", description="Boolean ultrapowers on finite algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--max-atoms", type=int, default=16, help="Refuse algebras with more atoms.")
    common.add_argument("--pool-rank", type=int, default=None, help="HF rank of the check-name pool.")
    common.add_argument("--depth", type=int, default=None,
                        help="Sampled formula depth (default 3); chain depth for demo-omega (default 10).")
    common.add_argument("--samples", type=int, default=None,
                        help="Sampled formulas (ultrapower) or rectangles (demo-omega).")
    common.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)
    for name, helptext in (("eval", "Boolean values of the scenario's formulas."),
                           ("ultrapower", "Quotient model, Łoś sweep, presentations, direct limit.")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--scenario", required=True)
    sub.add_parser("demo-omega", parents=[common], help="Witnesses over the ultimately periodic sets.")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.samples is None:
        args.samples = 1000 if args.command == "demo-omega" else 100
    if args.depth is None:
        args.depth = 10 if args.command == "demo-omega" else 3
    if args.max_atoms < 1:
        print("input error: --max-atoms must be positive", file=sys.stderr)
        return 2
    try:
        with atom_limit(args.max_atoms):
            if args.command == "demo-omega":
                if args.depth < 1:
                    raise ScenarioError("--depth must be at least 1")
                report, ok = cmd_demo_omega(args)
            else:
                sc = load_scenario(args.scenario, pool_rank=args.pool_rank, seed=args.seed)
                report, ok = (cmd_eval if args.command == "eval" else cmd_ultrapower)(sc, args)
    except SizeGuardError as e:
        print(f"size guard: {e}", file=sys.stderr)
        return 3
    except (ScenarioError, FormulaSyntaxError, SignatureError, UnassignedVariableError,
            PoolError, ImproperIdealError, KeyError, ValueError, TypeError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    report["schema"] = SCHEMA
    report["ok"] = ok
    print(render(report, args.format))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
