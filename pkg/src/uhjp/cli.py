"""Command-line entry point: ``uhjp <subcommand> ...``.

Reports are JSON (sorted keys) on stdout; ``--format text`` gives a short
summary instead. Exit status: 0 success, 1 negative verdict, 2 bad input,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from uhjp import config, io
from uhjp.errors import UHJPError
from uhjp.euclid import cor17_embed, dilation_check, scaled_coloring, symmetry_group
from uhjp.extract import KrizBase, action_extractor, cyclic_extractor, solvable_extractor
from uhjp.groups import EquivalenceRelation, is_solvable, orbits_of, regular_action, subnormal_cyclic_series
from uhjp.hjdegree import all_hj_degrees, hj_degree
from uhjp.oracle import minimal_N_search, verify_witness
from uhjp.coloring import from_spec
from uhjp.schemas import VERSION


def _dump(doc, fmt, text=None):
    if fmt == "text" and text is not None:
        return text
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def _tag(name, doc):
    return {"schema": f"uhjp.{name}/{VERSION}", **doc}


def _action(args):
    if getattr(args, "action", None):
        action = io.parse_action(args.action)
        if args.group:
            io.check_action_group(action, io.parse_group(args.group))
        return action
    if not args.group:
        raise io.BadDocument("--group or --action is required")
    return io.parse_action(args.group)


def _series(args, G):
    return io.parse_series(G, getattr(args, "series", None))


def _extractor(args, action):
    G = action.group
    series = _series(args, G)
    kind = getattr(args, "extractor", "auto")
    if kind == "kriz-base":
        ex = KrizBase(G.order)
        if ex.action != regular_action(G):
            raise io.BadDocument("kriz-base needs a cyclic group in standard form")
        return ex
    if kind == "cyclic":
        ex = cyclic_extractor(G.order)
        if ex.action != regular_action(G):
            raise io.BadDocument("cyclic extractor needs a cyclic group in standard form")
        return ex
    if action == regular_action(G):
        return solvable_extractor(G, series)
    return action_extractor(G, action, series)


# ---------------------------------------------------------------------------
# subcommands


def cmd_group(args):
    action = _action(args)
    G = action.group
    ok, derived = is_solvable(G)
    series = subnormal_cyclic_series(G) if ok else None
    doc = {
        "order": G.order,
        "labels": [G.label(g) for g in G.elements()],
        "abelian": G.is_abelian,
        "solvable": ok,
        "derived_series": [list(s) for s in derived],
        "series": None if series is None else {
            "subgroups": [list(s) for s in series.subgroups],
            "factor_orders": list(series.factor_orders),
            "factor_generators": list(series.factor_generators),
        },
        "orbits": orbits_of(action).classes(),
    }
    text = f"order {G.order}, {'solvable' if ok else 'not solvable'}, {len(doc['orbits'])} orbit(s)"
    return 0, _tag("group", doc), text


def cmd_hj_degree(args):
    if args.orders:
        d = hj_degree([int(p) for p in args.orders.split(",")])
        doc = d.to_json()
    else:
        G = _action(args).group
        series = _series(args, G) or subnormal_cyclic_series(G)
        doc = hj_degree(series).to_json()
        if args.all:
            rows, dups = all_hj_degrees(G)
            doc["all"] = [{"subgroups": [list(s) for s in ser.subgroups], **d.to_json()} for ser, d in rows]
            doc["duplicates"] = {str(v): [list(o) for o in orders] for v, orders in dups.items()}
    return 0, _tag("hj-degree", doc), doc["value"]


def cmd_plan(args):
    ex = _extractor(args, _action(args))
    plan = ex.plan_report(args.colors)
    doc = plan.to_json()
    length = doc["length"].get("value") or doc["length"].get("expr") or f"{doc['length']['digits']} digits"
    return 0, _tag("plan", doc), f"N = {length} (feasible: {plan.feasible})"


def cmd_extract(args):
    action = _action(args)
    ex = _extractor(args, action)
    spec = io.parse_coloring(args.coloring, args.seed)
    oracle = ex.oracle(args.colors, spec)
    res = ex.run(args.colors, oracle)
    # independent re-check including singleton classes
    rep = verify_witness(res.witness, oracle, ex.relation, action)
    G = action.group
    labels = [G.label(g) for g in G.elements()]
    letters = labels if action == regular_action(G) else None
    doc = res.to_json(letters, labels)
    doc["verified"] = rep.ok
    doc["coloring"] = spec
    doc.pop("uniform", None)
    return (0 if rep.ok else 1), _tag("extract", doc), f"{doc['pretty']} verified={rep.ok}"


def cmd_verify(args):
    action = _action(args)
    W = io.parse_word(args.word)
    spec = io.parse_coloring(args.coloring, args.seed)
    oracle = from_spec(spec, W.length, action.set_size, args.colors)
    if args.relation == "total":
        rel = EquivalenceRelation.total(action.set_size)
    else:
        rel = orbits_of(action)
    rep = verify_witness(W, oracle, rel, action)
    return (0 if rep.ok else 1), _tag("verify", rep.to_json()), f"verified={rep.ok}"


def cmd_search(args):
    action = _action(args)
    rel = orbits_of(action)
    res = minimal_N_search(action, rel, args.degree, args.colors, args.max, args.budget, jobs=args.jobs)
    code = {"found": 0, "none": 1, "unknown": 3}[res.verdict]
    return code, _tag("search-min-n", res.to_json()), str(res.value if res.value is not None else res.verdict)


def cmd_euclid(args):
    X = io.parse_pointset(args.points)
    G, action = symmetry_group(X)
    if args.mode == "symmetry":
        doc = {"mode": "symmetry", "order": G.order, "labels": list(G.labels), "transitive": action.is_transitive,
               "orbits": orbits_of(action).classes(),
               "permutations": [list(row) for row in action.act]}
        return 0, _tag("euclid", doc), f"symmetry group of order {G.order}"
    if args.mode == "dilation":
        if not args.word:
            raise io.BadDocument("--word is required for dilation mode")
        rep = dilation_check(io.parse_word(args.word), X, action)
        doc = {"mode": "dilation", **rep.to_json()}
        return (0 if rep.ok else 1), _tag("euclid", doc), f"dilation ok={rep.ok} d={rep.degree}"
    elements = [int(e) for e in args.elements.split(",")] if args.elements else None
    spec = io.load(args.coloring) if args.coloring else {"kind": "random", "seed": args.seed}
    if spec.get("kind") == "random" and "seed" not in spec:
        spec["seed"] = args.seed
    cert = cor17_embed(X, args.colors, scaled_coloring(spec, args.colors), elements=elements, plan_only=args.plan_only)
    doc = {"mode": "embed", **cert.to_json()}
    ok = args.plan_only or (cert.isometric and cert.monochromatic)
    return (0 if ok else 1), _tag("euclid", doc), f"lambda = {cert.lam}, isometric={cert.isometric}"


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="uhjp", description="Uniform Hales-Jewett witnesses for finite groups.")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--budget-dense", type=int, default=None, help="override UHJP_DENSE_BUDGET")
    # the same flags are accepted after the subcommand
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    shared.add_argument("--budget-dense", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[shared], **kw)

    def common(sp, colors=False):
        sp.add_argument("--group", help="group JSON or file")
        sp.add_argument("--action", help="action JSON or file")
        sp.add_argument("--seed", type=int, default=0)
        if colors:
            sp.add_argument("--colors", type=int, required=True)
        return sp

    common(sub.add_parser("group", help="inspect a group or action")).set_defaults(fn=cmd_group)

    sp = common(sub.add_parser("hj-degree", help="HJ-degree of a cyclic-factor series"))
    sp.add_argument("--series", help="ascending chain of subgroups as JSON")
    sp.add_argument("--orders", help="comma-separated factor orders instead of a group")
    sp.add_argument("--all", action="store_true", help="list every series")
    sp.set_defaults(fn=cmd_hj_degree)

    for name, fn, hlp in (("plan", cmd_plan, "length trace without running"), ("extract", cmd_extract, "run an extraction")):
        sp = common(sub.add_parser(name, help=hlp), colors=True)
        sp.add_argument("--series")
        sp.add_argument("--extractor", choices=["auto", "cyclic", "kriz-base"], default="auto")
        if name == "extract":
            sp.add_argument("--coloring", required=True, help="coloring spec JSON")
        sp.set_defaults(fn=fn)

    sp = common(sub.add_parser("verify", help="check a word against a coloring"), colors=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--relation", choices=["orbits", "total"], default="orbits")
    sp.set_defaults(fn=cmd_verify)

    sp = common(sub.add_parser("search-min-n", help="least N by exhaustive search"), colors=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None, help="colorings per N")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(fn=cmd_search)

    sp = sub.add_parser("euclid", help="point-set symmetry, dilation and embedding")
    sp.add_argument("--points", required=True)
    sp.add_argument("--mode", choices=["symmetry", "dilation", "embed"], default="symmetry")
    sp.add_argument("--word")
    sp.add_argument("--colors", type=int, default=2)
    sp.add_argument("--coloring")
    sp.add_argument("--elements", help="comma-separated subgroup of the symmetry group")
    sp.add_argument("--plan-only", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_euclid)
    return p


def run(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.budget_dense is not None:
        config.set_budget(dense=args.budget_dense)
    try:
        code, doc, text = args.fn(args)
    except UHJPError as e:
        code, doc, text = e.exit_code, _tag("error", e.to_json()), f"error: {e}"
    except (ValueError, KeyError, TypeError) as e:
        code, doc, text = 2, _tag("error", {"error": type(e).__name__, "message": str(e)}), f"error: {e}"
    finally:
        if args.budget_dense is not None:
            config.reset_budget()
    print(_dump(doc, args.format, text), file=out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
