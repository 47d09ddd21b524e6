"""Command-line front end.

Exit codes: 0 on success, 1 when independent computation paths disagree or
a verification suite records a FAIL, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from . import closedforms as cf
from . import cyclic, dyck, verify
from .ctengine import (
    car_ct_expression,
    evaluate,
    evaluate_series,
    parse_ct_expression,
    ps_ct_expression,
)
from .graphs import caracol_graph, parse_graph_spec, parse_net_flow, pitman_stanley_graph
from .kostant import count_flows
from .lidskii import ehrhart_like, volume


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowvol",
        description="Exact flow-polytope volumes, flow counts, constant terms, "
        "and labeled-path enumeration, with a cross-verification harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kpf = sub.add_parser("kpf", help="count nonnegative integer flows")
    kpf.add_argument("--graph", required=True, help="ps:<n> | car:<n> | aug:<k>:<spec> | <N>:<i>-<j>,...")
    kpf.add_argument("--flow", required=True, help="comma-separated net supplies (length N or N-1)")
    kpf.set_defaults(handler=_cmd_kpf)

    vol = sub.add_parser("volume", help="normalized flow-polytope volume")
    vol.add_argument("--graph", required=True)
    vol.add_argument("--flow", required=True)
    vol.add_argument("--method", default="kpf", choices=["kpf", "all"])
    vol.set_defaults(handler=_cmd_volume)

    ehr = sub.add_parser("ehrhart", help="volume of the k-fold augmented graph at (1, 0^n)")
    group = ehr.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", choices=["ps", "car"])
    group.add_argument("--graph")
    ehr.add_argument("--n", type=int, help="family size parameter (with --family)")
    ehr.add_argument("--k", type=int, required=True)
    ehr.add_argument(
        "--method", default="kpf", choices=["kpf", "ct", "enum", "closed", "all"]
    )
    ehr.set_defaults(handler=_cmd_ehrhart)

    enum = sub.add_parser("enumerate", help="list or count words")
    enum.add_argument("kind", choices=["ld", "dld", "prefix", "ew"])
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--k", type=int, required=True)
    enum.add_argument("--i", type=int, help="prefix end height (kind=prefix)")
    enum.add_argument("--zeros", type=int, help="exact number of 0-labels (kind=ld)")
    enum.add_argument("--comp", help="comma-separated label counts a_0..a_k")
    out = enum.add_mutually_exclusive_group(required=True)
    out.add_argument("--count", action="store_true")
    out.add_argument("--list", action="store_true")
    enum.set_defaults(handler=_cmd_enumerate)

    ct = sub.add_parser("ct", help="iterated constant term of a factor product")
    ct.add_argument("--expr", required=True, help="m:<e1,...,en>; p:<i>^<k>,...; d:<i>-<j>,...")
    ct.add_argument("--method", default="cp", choices=["cp", "series", "all"])
    ct.set_defaults(handler=_cmd_ct)

    ver = sub.add_parser("verify", help="run an identity-grid verification suite")
    ver.add_argument("--suite", required=True, choices=list(verify.SUITES) + ["all"])
    ver.add_argument("--max-n", type=int, dest="max_n")
    ver.add_argument("--max-k", type=int, dest="max_k")
    ver.add_argument("--format", default="text", choices=["text", "json", "csv"])
    ver.add_argument("--out", help="write the report to a file instead of stdout")
    ver.set_defaults(handler=_cmd_verify)

    return parser


def _cmd_kpf(args) -> int:
    graph = parse_graph_spec(args.graph)
    flow = parse_net_flow(args.flow, graph.vertex_count)
    print(count_flows(graph, flow))
    return 0


def _cmd_volume(args) -> int:
    graph = parse_graph_spec(args.graph)
    flow = parse_net_flow(args.flow, graph.vertex_count)
    value = volume(graph, flow)
    if args.method == "kpf":
        print(value)
        return 0
    print(f"kpf={value}")
    print("AGREE")
    return 0


def _cmd_ehrhart(args) -> int:
    if args.family is not None and args.n is None:
        raise ValueError("--family needs --n")
    if args.k < 1:
        raise ValueError("--k must be >= 1")
    paths = _ehrhart_paths(args)
    if args.method != "all":
        print(paths[args.method]())
        return 0
    values = {}
    for name in ("kpf", "ct", "enum", "closed"):
        if name in paths:
            values[name] = paths[name]()
            print(f"{name}={values[name]}")
    agree = len(set(values.values())) == 1
    print("AGREE" if agree else "DISAGREE")
    return 0 if agree else 1


def _ehrhart_paths(args) -> dict:
    k = args.k
    if args.graph is not None:
        graph = parse_graph_spec(args.graph)
        paths = {"kpf": lambda: ehrhart_like(graph, k)}
        if args.method in ("ct", "enum", "closed"):
            raise ValueError(f"method {args.method!r} needs --family")
        return paths
    n = args.n
    if args.family == "ps":
        return {
            "kpf": lambda: ehrhart_like(pitman_stanley_graph(n), k),
            "ct": lambda: evaluate(ps_ct_expression(n, k)),
            "enum": lambda: sum(1 for _ in dyck.labeled_dyck_words(n - 1, k, zeros=0)),
            "closed": lambda: cf.ehrhart_ps_closed(n, k),
        }
    return {
        "kpf": lambda: ehrhart_like(caracol_graph(n), k),
        "ct": lambda: evaluate(car_ct_expression(n - 1, k)),
        "enum": lambda: sum(1 for _ in dyck.doubly_labeled_dyck_words(n - 2, k)),
        "closed": lambda: cf.ehrhart_car_closed(n, k),
    }


def _cmd_enumerate(args) -> int:
    comp = None
    if args.comp is not None:
        comp = tuple(int(tok) for tok in args.comp.split(","))
    if args.kind == "ld":
        if args.zeros is not None and comp is not None:
            raise ValueError("give at most one of --zeros and --comp")
        words = dyck.labeled_dyck_words(args.n, args.k, zeros=args.zeros, label_counts=comp)
    elif args.kind == "dld":
        _reject_filters(args, comp)
        words = dyck.doubly_labeled_dyck_words(args.n, args.k)
    elif args.kind == "prefix":
        if args.i is None or comp is None:
            raise ValueError("prefix enumeration needs --i and --comp")
        words = dyck.dyck_prefixes(args.n, args.i, args.k, comp)
    else:
        _reject_filters(args, comp)
        words = cyclic.extended_words(args.n, args.k)
    if args.count:
        print(sum(1 for _ in words))
        return 0
    for word in words:
        print(dyck.format_word(word) if not isinstance(word, cyclic.ExtendedWord) else str(word))
    return 0


def _reject_filters(args, comp) -> None:
    if args.zeros is not None or comp is not None or args.i is not None:
        raise ValueError(f"kind {args.kind!r} takes no --zeros/--comp/--i filters")


def _cmd_ct(args) -> int:
    expr = parse_ct_expression(args.expr)
    if args.method == "cp":
        print(evaluate(expr))
        return 0
    if args.method == "series":
        print(evaluate_series(expr))
        return 0
    first = evaluate(expr)
    second = evaluate_series(expr)
    print(f"cp={first}")
    print(f"series={second}")
    agree = first == second
    print("AGREE" if agree else "DISAGREE")
    return 0 if agree else 1


def _cmd_verify(args) -> int:
    report = verify.run_suite(args.suite, args.max_n, args.max_k)
    if args.format == "text":
        rendered = verify.render_text(report)
    elif args.format == "csv":
        rendered = verify.render_csv(report)
    else:
        rendered = verify.render_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
