"""Command-line frontend.

Every subcommand takes the ambient rank with ``-k`` and a subgroup as one
comma-separated list of words, e.g. ``stallings pi -k 2 "a b A B"``.
Machine output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from .algebraic import primitivity_report
from .core_graph import build_core_graph, wedge_of_loops
from .factor import NotContainedError, is_free_factor
from .fringe import DEFAULT_NODE_CAP, FringeCapExceeded, enumerate_fringe
from .sampler import (
    BudgetExceeded,
    average_fixed_points_mc,
    exhaustive_probability,
    exhaustive_report,
    monte_carlo_probability,
)
from .series import BelowValidityError, phi_closed_form, phi_series, render_closed_form, valid_from
from .upsilon import build_upsilon, verify_correspondence
from .words import GeneratingSet, parse_generating_set

EX_OK = 0
EX_NO = 1
EX_NOT_CONTAINED = 2
EX_USAGE = 64
EX_DATAERR = 65
EX_UNAVAILABLE = 69


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _emit(obj) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj if obj.endswith("\n") else obj + "\n")
    else:
        json.dump(obj, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _pi_text(pi) -> str:
    return "infinity" if pi == math.inf else str(pi)


def _subgroup(args, text: str | None = None) -> GeneratingSet:
    return parse_generating_set(args.subgroup if text is None else text, args.rank)


def _fmt(args, allowed: tuple[str, ...] = ("text", "json")) -> str:
    if args.fmt not in allowed:
        raise UsageError(f"{args.command} does not support --{args.fmt}")
    return args.fmt


def cmd_core_graph(args) -> int:
    fmt = _fmt(args, ("text", "json", "dot"))
    g = build_core_graph(_subgroup(args))
    if fmt == "json":
        _emit(g.to_json())
    elif fmt == "dot":
        _emit(g.to_dot())
    else:
        lines = [
            f"vertices: {g.vertex_count}",
            f"edges: {g.edge_count}",
            f"rank: {g.rank}",
            "generators: " + ", ".join(str(w) for w in g.generators()),
        ]
        lines += [f"  {u} -x{j}-> {v}" for j, u, v in g.edges()]
        _emit("\n".join(lines))
    return EX_OK


def cmd_fringe(args) -> int:
    fmt = _fmt(args, ("text", "json", "dot"))
    dag = enumerate_fringe(build_core_graph(_subgroup(args)), cap=args.cap)
    if fmt == "json":
        _emit(dag.to_json())
    elif fmt == "dot":
        _emit(dag.to_dot())
    else:
        lines = [f"nodes: {len(dag)}", f"edges: {len(dag.edges)}"]
        for r, gs in dag.nodes_by_rank().items():
            lines.append(f"rank {r}: {len(gs)}")
        by_distance: dict[int, int] = {}
        for d in dag.distances.values():
            by_distance[d] = by_distance.get(d, 0) + 1
        for d in sorted(by_distance):
            lines.append(f"distance {d}: {by_distance[d]}")
        _emit("\n".join(lines))
    return EX_OK


def cmd_is_free_factor(args) -> int:
    fmt = _fmt(args)
    report = is_free_factor(_subgroup(args, args.sub), _subgroup(args, args.sup), cap=args.cap)
    if fmt == "json":
        _emit(report.to_json())
    elif not report.contained:
        _emit("not contained")
    else:
        verdict = "free factor" if report.is_free_factor else "contained but not a free factor"
        _emit(f"{verdict}; rho={report.rho} rank_gap={report.rank_gap}")
    if not report.contained:
        return EX_NOT_CONTAINED
    return EX_OK if report.is_free_factor else EX_NO


def cmd_is_primitive(args) -> int:
    fmt = _fmt(args)
    h = _subgroup(args)
    if len(h) != 1:
        raise ValueError("is-primitive takes a single word")
    if not h.generators[0]:
        raise ValueError("the identity is not primitive by convention; pass a nontrivial word")
    report = primitivity_report(h, cap=args.cap)
    primitive = report.pi == math.inf
    if fmt == "json":
        _emit({"primitive": primitive, **report.to_json()})
    else:
        _emit(f"{'primitive' if primitive else 'not primitive'}; pi={_pi_text(report.pi)}")
    return EX_OK if primitive else EX_NO


def cmd_comp_gens(args) -> int:
    fmt = _fmt(args)
    report = is_free_factor(_subgroup(args, args.sub), _subgroup(args, args.sup), cap=args.cap)
    if not report.contained:
        raise NotContainedError("H is not contained in J")
    if fmt == "json":
        _emit(report.to_json())
    else:
        _emit(f"complementary_generators_needed: {report.complementary_generators_needed}")
    return EX_OK


def cmd_pi(args) -> int:
    fmt = _fmt(args)
    report = primitivity_report(_subgroup(args), cap=args.cap)
    if fmt == "json":
        _emit(report.to_json())
        return EX_OK
    lines = [f"pi: {_pi_text(report.pi)}", f"critical_subgroups: {len(report.critical_subgroups)}"]
    for g in report.critical_subgroups:
        lines.append("  <" + ", ".join(str(w) for w in g.generators()) + ">")
    lines.append(f"algebraic_extensions: {len(report.algebraic_extensions)}")
    if report.degenerate:
        lines.append("degenerate: trivial subgroup")
    _emit("\n".join(lines))
    return EX_OK


def cmd_phi(args) -> int:
    fmt = _fmt(args)
    root = build_core_graph(_subgroup(args))
    dag = enumerate_fringe(root, cap=args.cap)
    report = phi_series(root, order=args.order, fringe=dag)
    value = None
    if args.n is not None:
        value = phi_closed_form(root, args.n, fringe=dag)
    if fmt == "json":
        out = report.to_json()
        if value is not None:
            out["n"] = args.n
            out["value"] = str(value)
        _emit(out)
        return EX_OK
    lines = [
        f"series: {report.series}",
        "coefficients: " + " ".join(str(c) for c in report.coefficients),
        f"phi: {report.phi_text()}",
        f"valid_from: {report.valid_from}",
        f"closed_form: {render_closed_form(dag)}",
    ]
    if value is not None:
        lines.append(f"value at n={args.n}: {value}")
    _emit("\n".join(lines))
    return EX_OK


def cmd_upsilon(args) -> int:
    fmt = _fmt(args, ("text", "json", "dot"))
    g = build_core_graph(_subgroup(args))
    u = build_upsilon(g)
    if fmt == "dot":
        _emit(u.to_dot())
        return EX_OK
    fields = {
        "vertices": u.vertex_count,
        "edges": u.edge_count,
        "components": u.component_count(),
        "forest": u.is_forest(),
        "correspondence": verify_correspondence(g),
    }
    if fmt == "json":
        _emit(fields)
    else:
        _emit("\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in fields.items()))
    return EX_OK


def cmd_sample(args) -> int:
    fmt = _fmt(args)
    h = _subgroup(args)
    if args.fixed_points:
        if len(h) != 1:
            raise ValueError("--fixed-points takes a single word")
        if args.exhaustive:
            raise UsageError("--fixed-points has no exhaustive mode")
        report = average_fixed_points_mc(h.generators[0], args.n, args.trials, args.seed, args.rank, args.workers)
    elif args.exhaustive:
        report = exhaustive_report(h, args.n)
    else:
        report = monte_carlo_probability(h, args.n, args.trials, args.seed, args.workers)
    if fmt == "json":
        _emit(report.to_json())
    else:
        lines = [
            f"{report.quantity}: {report.estimate!r}",
            f"standard_error: {report.standard_error!r}",
            f"trials: {report.trials}",
        ]
        if report.exact is not None:
            lines.append(f"exact: {report.exact}")
        else:
            lines += [f"seed: {report.seed}", f"prng: {report.prng}"]
        _emit("\n".join(lines))
    return EX_OK


def cmd_oracle(args) -> int:
    fmt = _fmt(args)
    h = _subgroup(args)
    root = build_core_graph(h)
    exact = exhaustive_probability(h, args.n)
    closed = phi_closed_form(root, args.n, cap=args.cap) + type(exact)(1, args.n ** root.rank)
    agree = exact == closed
    if fmt == "json":
        _emit({"n": args.n, "exhaustive": str(exact), "closed_form": str(closed), "agree": agree})
    else:
        _emit(f"n: {args.n}\nexhaustive: {exact}\nclosed_form: {closed}\nagree: {str(agree).lower()}")
    return EX_OK if agree else EX_NO


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-k", "--rank", type=int, required=True, help="rank of the ambient free group")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="human-readable output (default)")
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output")
    fmt.add_argument("--dot", dest="fmt", action="store_const", const="dot", help="Graphviz DOT output")
    common.set_defaults(fmt="text")
    common.add_argument("--cap", type=int, default=DEFAULT_NODE_CAP, help="fringe node cap (default %(default)s)")

    parser = _Parser(prog="stallings", description="Stallings core graphs, fringes and word measures.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, positional=True):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if positional:
            p.add_argument("subgroup", help='comma-separated generators, e.g. "a b A B, b a a"')
        p.set_defaults(func=func)
        return p

    add("core-graph", cmd_core_graph, "fold generators into the core graph")
    add("fringe", cmd_fringe, "enumerate all quotients of the core graph")
    for name, func, help_text in (
        ("is-free-factor", cmd_is_free_factor, "decide whether SUB is a free factor of SUP (exit 0 yes, 1 no, 2 not contained)"),
        ("comp-gens", cmd_comp_gens, "count the extra generators needed to reach SUP from a basis of SUB"),
    ):
        p = add(name, func, help_text, positional=False)
        p.add_argument("--sub", required=True, help="generators of H")
        p.add_argument("--sup", required=True, help="generators of J")
    add("is-primitive", cmd_is_primitive, "decide whether a word is primitive (exit 0 yes, 1 no)")
    add("pi", cmd_pi, "primitivity rank and critical subgroups")
    p = add("phi", cmd_phi, "coefficients of the fixed-point series")
    p.add_argument("--order", type=int, default=None, help="last coefficient index (default rank + 3)")
    p.add_argument("--n", type=int, default=None, help="also evaluate the closed form at this n")
    add("upsilon", cmd_upsilon, "the pair graph and its component count")
    p = add("sample", cmd_sample, "estimate the fixed-point probability by sampling")
    p.add_argument("--n", type=int, required=True, help="degree of the symmetric group")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true", help="enumerate all of Hom(F_k, S_n) instead")
    p.add_argument("--fixed-points", action="store_true", help="estimate the mean number of fixed points of one word")
    p = add("oracle", cmd_oracle, "check the closed form against exhaustive enumeration")
    p.add_argument("--n", type=int, required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.rank < 1:
        print("error: rank must be at least 1", file=sys.stderr)
        return EX_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_USAGE
    except (FringeCapExceeded, BudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_UNAVAILABLE
    except (BelowValidityError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
