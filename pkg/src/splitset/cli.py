"""Command-line front end.

Exit status: 0 on success, 1 when the request cannot be met (no matching
splitting set, non-HCF input for an HCF-only method, atom cap exceeded),
2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .core import ParseError, Program, parse_program, render_program
from .experiment import GenConfig, HeadPolicy, gen_random_program, run_sweep, write_sweep_csv
from .graph import (build_dep_graph, build_super_graph, dep_graph_dot, dep_graph_listing,
                    is_hcf, sources, super_graph_dot, super_graph_listing)
from .semantics import (DEFAULT_MAX_ATOMS, NotHCF, TooManyAtoms, reduce, stable_models_bruteforce,
                        stable_models_hcf, stable_models_via_gsplit, stable_models_via_split)
from .split import SplitGoal, bottom, min_g_splitting_set, min_splitting_set, search_splitting_set


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _read(path: str) -> Program:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    return parse_program(text)


def _atom_list(p: Program, raw: str | None) -> frozenset[int]:
    if not raw:
        return frozenset()
    names = [n.strip() for n in raw.split(",") if n.strip()]
    try:
        return p.check_atoms(p.ids(names))
    except ValueError as e:
        raise UsageError(str(e)) from None


def _rule_labels(p: Program) -> str:
    return ", ".join(map(str, p.numbers)) or "none"


def cmd_check(args, out):
    p = _read(args.input)
    sg = build_super_graph(build_dep_graph(p))
    out.write(f"rules: {len(p)}\n")
    out.write(f"atoms: {len(p.atoms)}\n")
    out.write(f"sccs: {len(sg.sccs)}\n")
    out.write(f"sources: {len(sources(sg))}\n")
    out.write(f"hcf: {'yes' if is_hcf(p, sg) else 'no'}\n")


def cmd_graph(args, out):
    p = _read(args.input)
    g = build_dep_graph(p)
    if args.super:
        sg = build_super_graph(g)
        out.write(super_graph_dot(p, sg) if args.dot else super_graph_listing(p, sg))
    else:
        out.write(dep_graph_dot(p, g) if args.dot else dep_graph_listing(p, g))


def cmd_split(args, out):
    p = _read(args.input)
    if args.require and args.bottom_hcf:
        raise UsageError("--require and --bottom-hcf cannot be combined")
    if args.require:
        goal = SplitGoal.must_contain(_atom_list(p, args.require))
    elif args.bottom_hcf:
        goal = SplitGoal.bottom_hcf()
    else:
        goal = SplitGoal.nonempty()
    result = search_splitting_set(p, goal)
    if args.trace:
        out.write(result.format(p))
    if result.atoms is None:
        raise DomainError("no splitting set satisfies the constraints")
    u = result.atoms
    out.write(f"{p.fmt_set(u)}\n")
    out.write(f"size {len(u)}\n")
    out.write(f"bottom rules {_rule_labels(bottom(p, u))}\n")


def cmd_gsplit(args, out):
    p = _read(args.input)
    s = min_g_splitting_set(p)
    if s is None:
        raise DomainError("empty program has no nonempty g-splitting set")
    out.write(f"{p.fmt_set(s)}\n")
    out.write(f"size {len(s)}\n")
    out.write(f"bottom rules {_rule_labels(bottom(p, s))}\n")


def cmd_solve(args, out):
    p = _read(args.input)
    cap = args.max_atoms
    if args.method == "brute":
        models = stable_models_bruteforce(p, cap)
    elif args.method == "hcf":
        models = stable_models_hcf(p, cap)
    elif args.method == "split":
        models = stable_models_via_split(p, min_splitting_set(p) or frozenset(), cap)
    else:
        models = stable_models_via_gsplit(p, min_g_splitting_set(p) or frozenset(), cap)
        if args.verbose:
            for m in stable_models_bruteforce(p, cap):
                if m not in models:
                    print(f"not produced by gsplit: {p.fmt_set(m)}", file=sys.stderr)
    for m in models:
        out.write(f"{p.fmt_set(m)}\n")
    out.write(f"models: {len(models)}\n")
    if args.require_model and not models:
        raise DomainError("no stable model")


def cmd_reduce(args, out):
    p = _read(args.input)
    x = _atom_list(p, args.true)
    y = _atom_list(p, args.false)
    if x & y:
        raise UsageError(f"atoms both true and false: {p.fmt_set(x & y)}")
    out.write(render_program(reduce(p, x, y), numbered=True))


def cmd_gen(args, out):
    cfg = GenConfig(args.vars, args.ratio, args.seed, args.head_policy)
    out.write(render_program(gen_random_program(cfg)))


def cmd_sweep(args, out):
    points = run_sweep(args.vars, args.ratio_from, args.ratio_to, args.step,
                       args.per_point, args.seed, args.head_policy, args.jobs)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as f:
            write_sweep_csv(points, f)
    else:
        write_sweep_csv(points, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splitset", description="Splitting sets for ground disjunctive logic programs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("input", nargs="?", default="-", help="program file, '-' for stdin")
        return sp

    sp = with_input("check", "parse a program and summarise it")
    sp.set_defaults(func=cmd_check)

    sp = with_input("graph", "print the dependency graph")
    sp.add_argument("--super", action="store_true", help="print the SCC condensation instead")
    sp.add_argument("--dot", action="store_true", help="Graphviz DOT output")
    sp.set_defaults(func=cmd_graph)

    sp = with_input("split", "find a minimum-size nontrivial splitting set")
    sp.add_argument("--nonempty", action="store_true", help="smallest nonempty splitting set (default)")
    sp.add_argument("--require", metavar="A,B,...", help="splitting set must contain these atoms")
    sp.add_argument("--bottom-hcf", action="store_true", help="bottom part must be head-cycle-free")
    sp.add_argument("--trace", action="store_true", help="print the search expansions")
    sp.set_defaults(func=cmd_split)

    sp = with_input("gsplit", "find a minimum-size nonempty g-splitting set")
    sp.set_defaults(func=cmd_gsplit)

    sp = with_input("solve", "compute stable models")
    sp.add_argument("--method", choices=["brute", "hcf", "split", "gsplit"], default="brute")
    sp.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS, metavar="N")
    sp.add_argument("--require-model", action="store_true", help="exit 1 when there is no stable model")
    sp.add_argument("-v", "--verbose", action="store_true",
                    help="with gsplit, report stable models the decomposition did not produce")
    sp.set_defaults(func=cmd_solve)

    sp = with_input("reduce", "propagate true/false atoms through the program")
    sp.add_argument("--true", metavar="A,B,...")
    sp.add_argument("--false", metavar="A,B,...")
    sp.set_defaults(func=cmd_reduce)

    policies = [h.value for h in HeadPolicy]
    sp = sub.add_parser("gen", help="generate a random program")
    sp.add_argument("--vars", type=int, default=20)
    sp.add_argument("--ratio", type=float, default=4.25)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--head-policy", choices=policies, default=HeadPolicy.NONEMPTY.value)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("sweep", help="minimum splitting-set size against the rules/atoms ratio (CSV)")
    sp.add_argument("--vars", type=int, default=20)
    sp.add_argument("--from", dest="ratio_from", type=float, default=2.0)
    sp.add_argument("--to", dest="ratio_to", type=float, default=6.0)
    sp.add_argument("--step", type=float, default=0.25)
    sp.add_argument("--per-point", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--head-policy", choices=policies, default=HeadPolicy.NONEMPTY.value)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("-o", "--output", help="write CSV here instead of stdout")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except (ParseError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (DomainError, NotHCF, TooManyAtoms) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
