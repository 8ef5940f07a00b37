"""Command line entry point.

A ``<recipe>`` argument is a constructor call (``symmetric(4)``), raw
generators (``"degree 3; gens (1 2 3), (1 2)"``) or a label from the shipped
corpus.  Exit codes: 0 success, 1 failed checks, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from .chartab import dixon_table, dump_table
from .codegree import group_profile, to_dot
from .orbits import find_split_abelian, orbits_on_dual, orbits_on_subgroup, relative_degrees
from .perm import GroupError, subgroup_generated
from .structure import (
    NotFrobenius,
    core_p,
    core_p_prime,
    derived_length,
    fitting,
    frobenius_structure,
    is_abelian,
    is_nilpotent,
    is_solvable,
    normal_subgroups,
    p_length,
    prime_divisors,
    sylow,
)
from .verify import CHECKS, DEFAULT_CHECKS, exit_status, report_json, run_corpus, summarize
from .zoo import ParseError, load_recipes, parse_group


def _group(text: str):
    try:
        recipe = parse_group(text)
    except ParseError:
        by_label = {r.label: r for r in load_recipes()}
        if text not in by_label:
            raise
        recipe = by_label[text]
    return recipe.build()


def cmd_table(args) -> int:
    G = _group(args.recipe)
    sys.stdout.write(dump_table(dixon_table(G, args.seed), args.recipe))
    return 0


def cmd_cod(args) -> int:
    G = _group(args.recipe)
    prof = group_profile(G, args.seed)
    print("order", G.order)
    print("cod", " ".join(map(str, prof.cod_set)))
    print("per_character", " ".join(map(str, prof.per_character)))
    print("k", prof.k_value)
    for p, vals in prof.cod_p.items():
        print(f"cod_{p}", " ".join(map(str, vals)))
    return 0


def cmd_graph(args) -> int:
    G = _group(args.recipe)
    prof = group_profile(G, args.seed)
    graph = prof.codegree_graph if args.dot == "codegree" else prof.gk_graph
    sys.stdout.write(to_dot(graph, args.dot))
    return 0


def cmd_structure(args) -> int:
    G = _group(args.recipe)
    print("order", G.order)
    print("classes", len(G.classes))
    print("exponent", G.exponent)
    lattice = normal_subgroups(G)
    print("normal_subgroup_orders", " ".join(str(N.order) for N in lattice))
    print("abelian", is_abelian(G))
    print("nilpotent", is_nilpotent(G))
    solv = is_solvable(G)
    print("solvable", solv)
    if solv:
        print("derived_length", derived_length(G))
    print("fitting_order", fitting(G).order)
    for p in prime_divisors(G):
        line = f"p={p} sylow {sylow(G, p).order} O_p {core_p(G, p).order} O_p' {core_p_prime(G, p).order}"
        if solv:
            line += f" p_length {p_length(G, p)}"
        print(line)
    try:
        K, H = frobenius_structure(G)
        print("frobenius kernel", K.order, "complement", H.order)
    except NotFrobenius:
        print("frobenius no")
    return 0


def cmd_orbits(args) -> int:
    G = _group(args.recipe)
    if args.complement == "auto":
        split = find_split_abelian(G)
        if split is None:
            print("no complemented abelian normal subgroup", file=sys.stderr)
            return 1
        H, V = split
    else:
        H = subgroup_generated(G, [int(x) for x in args.complement.split(",") if x.strip()])
        cands = [N for N in normal_subgroups(G)
                 if N.order * H.order == G.order and (N.bool_mask & H.bool_mask).sum() == 1]
        cands = [N for N in cands if is_abelian(N.as_group()[0])]
        if not cands:
            print("no abelian normal subgroup complemented by the given elements", file=sys.stderr)
            return 1
        V = cands[0]
    prim = orbits_on_subgroup(G, H, V)
    dual = orbits_on_dual(G, H, V)
    print("H_order", H.order, "V_order", V.order)
    print("orbit_sizes_on_V", " ".join(map(str, sorted(prim.sizes))))
    print("orbit_sizes_on_IrrV", " ".join(map(str, sorted(dual.sizes))))
    print("m_star_set", " ".join(map(str, sorted(dual.m_star_set))))
    print("m_star_count", dual.m_star_count)
    print("cd_over_V", " ".join(map(str, sorted(relative_degrees(G, V, args.seed)))))
    return 0


def cmd_verify(args) -> int:
    recipes = load_recipes(args.corpus)
    if args.checks == "all":
        checks = CHECKS
    elif args.checks:
        checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        unknown = [c for c in checks if c not in CHECKS]
        if unknown:
            print("unknown checks: " + ", ".join(unknown), file=sys.stderr)
            return 2
    else:
        checks = DEFAULT_CHECKS
    reports = run_corpus(recipes, checks, args.jobs, args.seed)
    text = report_json(reports, checks, args.seed)
    if args.json == "-":
        sys.stdout.write(text)
    elif args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
    for rep in reports:
        for r in rep.failures:
            print(f"FAIL {rep.label} {r.check} {r.params or ''} {r.witness}", file=sys.stderr)
    s = summarize(reports)
    print(f"groups {s['groups']} pass {s['pass']} fail {s['fail']} skipped {s['skipped']}", file=sys.stderr)
    return exit_status(reports)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charcod", description="Character codegrees of finite permutation groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for the table splitting step")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="print the character table dump")
    p.add_argument("recipe")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("cod", parents=[common], help="print codegrees")
    p.add_argument("recipe")
    p.set_defaults(fn=cmd_cod)

    p = sub.add_parser("graph", parents=[common], help="print a prime graph in DOT")
    p.add_argument("recipe")
    p.add_argument("--dot", choices=("codegree", "gk"), default="codegree")
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("structure", parents=[common], help="print structural invariants")
    p.add_argument("recipe")
    p.set_defaults(fn=cmd_structure)

    p = sub.add_parser("orbits", parents=[common], help="orbit sizes of a complement on an abelian normal subgroup and its dual")
    p.add_argument("recipe")
    p.add_argument("--complement", default="auto",
                   help="'auto' or comma-separated element indices generating the complement")
    p.set_defaults(fn=cmd_orbits)

    p = sub.add_parser("verify", parents=[common], help="run checks over a corpus file")
    p.add_argument("--corpus", default=None, help="corpus file (default: shipped corpus)")
    p.add_argument("--checks", default="", help="comma-separated check names, or 'all'")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", default="", help="write the JSON report here ('-' for stdout)")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
