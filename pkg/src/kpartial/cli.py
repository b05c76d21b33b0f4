"""``kpartial`` command line.

Exit codes: 0 success / valid, 1 invalid / UNSAT / harness failure,
2 usage error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from kpartial import io
from kpartial.coloring import (
    BudgetExceeded,
    PaletteError,
    PartialSpec,
    decide_exact,
    greedy_partial,
    verify_partial,
)
from kpartial.gadgets import (
    PathOfCliquesSpec,
    Permutation,
    edge_gadget_transform,
    indist_pair,
    path_of_cliques,
)
from kpartial.graph import GraphError, delta_edge, delta_max
from kpartial.ids import CliqueCoord, infer_scheme
from kpartial.local import (
    CORPUS,
    RoundBudgetError,
    extract_view,
    indistinguishability_report,
    lower_bound_demo,
    make_algorithm,
    make_network,
    max_rounds,
    pair_networks,
    views_equal,
)
from kpartial.report import ExperimentReport
from kpartial.search import search_obstructions

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj, out: Optional[str] = None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _perm(text: Optional[str], k: int) -> Optional[Permutation]:
    if text is None:
        return None
    try:
        images = tuple(int(x) for x in text.replace(" ", "").strip("[]").split(","))
        p = Permutation(images)
    except ValueError as exc:
        raise UsageError(f"bad permutation {text!r}: {exc}") from None
    if p.k != k:
        raise UsageError(f"permutation {text!r} does not act on 1..{k}")
    return p


def _path_spec(args) -> PathOfCliquesSpec:
    if args.spec:
        src = Path(args.spec).read_text() if Path(args.spec).exists() else args.spec
        return PathOfCliquesSpec.from_json(json.loads(src))
    if args.k is None or args.l is None:
        raise UsageError("path-of-cliques needs --k and --l (or --spec)")
    if args.perms:
        perms = tuple(Permutation(tuple(p)) for p in json.loads(args.perms))
        return PathOfCliquesSpec(args.k, args.l, perms)
    return PathOfCliquesSpec.identity(args.k, args.l)


def _write_graph(G, path: str, dot: bool) -> list[str]:
    io.write_graph(G, path)
    files = [path]
    if dot:
        dot_path = str(Path(path).with_suffix(".dot"))
        Path(dot_path).write_text(io.to_dot(G))
        files.append(dot_path)
    return files


def cmd_gen(args) -> int:
    if args.kind == "path-of-cliques":
        G = path_of_cliques(_path_spec(args))
        files = _write_graph(G, args.out, args.dot)
        _emit({"kind": args.kind, "n": G.n, "m": G.m, "files": files})
    elif args.kind == "indist-pair":
        if args.k is None or args.l is None:
            raise UsageError("indist-pair needs --k and --l")
        pair = indist_pair(args.k, args.l, _perm(args.middle_perm, args.k))
        stem = Path(args.out)
        files = []
        for tag, G in (("g1", pair.g1), ("g2", pair.g2)):
            files += _write_graph(G, str(stem.with_name(f"{stem.stem}.{tag}.json")), args.dot)
        _emit({
            "kind": args.kind,
            "n": pair.g1.n,
            "m": [pair.g1.m, pair.g2.m],
            "view_radius": pair.radius,
            "files": files,
        })
    else:
        if not args.graph or args.k is None:
            raise UsageError("gadget-transform needs --graph and --k")
        G, rmap = edge_gadget_transform(io.read_graph(args.graph), args.k)
        files = _write_graph(G, args.out, args.dot)
        _emit({"kind": args.kind, "n": G.n, "m": G.m, "gadgets": len(rmap.gadgets), "files": files})
    return EXIT_OK


def cmd_verify(args) -> int:
    G = io.read_graph(args.graph)
    col = io.read_coloring(args.coloring)
    try:
        bad = verify_partial(G, col, PartialSpec(args.k, args.c))
    except PaletteError as exc:
        _emit({"valid": False, "error": "palette", "message": str(exc)})
        return EXIT_INVALID
    _emit({"valid": not bad, "violations": [v.to_json() for v in bad]})
    return EXIT_OK if not bad else EXIT_INVALID


def cmd_color(args) -> int:
    G = io.read_graph(args.graph)
    if args.mode == "greedy":
        if args.c is not None and args.c != args.k + 1:
            raise UsageError("greedy always uses c = k + 1")
        col = greedy_partial(G, args.k)
    else:
        c = args.k if args.c is None else args.c
        try:
            col = decide_exact(G, PartialSpec(args.k, c), budget=args.budget)
        except BudgetExceeded as exc:
            _emit({"status": "budget", "message": str(exc)})
            return EXIT_BUDGET
        if col is None:
            _emit({"status": "unsat", "k": args.k, "c": c})
            return EXIT_INVALID
    if args.out:
        io.write_coloring(col, args.out)
        _emit({"status": "ok", "c": col.c, "file": args.out})
    else:
        _emit(io.coloring_to_json(col))
    return EXIT_OK


def cmd_demo_lower_bound(args) -> int:
    k, l = args.k, args.l
    rounds = max_rounds(l) if args.rounds is None else args.rounds
    algo = make_algorithm(args.algo, k, rounds)
    rep = ExperimentReport("demo-lower-bound", {"k": k, "l": l, "algorithm": args.algo, "rounds": rounds})
    pair = indist_pair(k, l, _perm(args.middle_perm, k))
    try:
        verdict = lower_bound_demo(k, l, algo, pair=pair)
    except RoundBudgetError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    n1, n2 = pair_networks(pair)
    ids = [n1.ids[h] for h in pair.endpoints]
    views = indistinguishability_report(n1, n2, ids, pair.radius)
    alt = 3 * l // 2 - 1
    rep.check("endpoint views equal at 3(l/2-1)", "indistinguishable", views["verdict"])
    rep.check("endpoint outputs agree", True, verdict.endpoint_agreement)
    rep.check("at least one graph miscoloured", True, bool(verdict.failed))
    rep.details = {
        "verdict": verdict.to_json(),
        "n": pair.g1.n,
        "view_radius": pair.radius,
        "radius_3l/2-1": {
            "radius": alt,
            "views_equal": all(
                views_equal(extract_view(n1, h, alt), extract_view(n2, h, alt)) for h in pair.endpoints
            ),
        },
    }
    _emit(rep.finish().to_json(), args.out)
    return EXIT_OK if rep.passed else EXIT_INVALID


def cmd_search(args) -> int:
    rep = ExperimentReport(
        "search-obstructions",
        {
            "k": args.k,
            "max_n": args.max_n,
            "require_no_clique": args.no_clique,
            "max_degree": args.max_degree,
            "iso_reduce": args.iso_reduce,
            "budget": args.budget,
        },
    )
    res = search_obstructions(
        args.k,
        args.max_n,
        require_no_clique=args.no_clique,
        max_degree=args.max_degree,
        budget=args.budget,
        iso_reduce=args.iso_reduce,
        first_only=not args.all,
    )
    rep.details = {
        "found": [
            {**io.graph_to_json(G), "delta_edge": delta_edge(G), "delta": delta_max(G)} for G in res.found
        ],
        "examined": res.examined,
        "prefiltered": res.prefiltered,
        "budget_failures": [io.graph_to_json(G) for G in res.budget_failures],
        "complete": res.complete,
    }
    rep.check("obstruction found", True, bool(res.found))
    _emit(rep.finish().to_json(), args.out)
    if res.found:
        return EXIT_OK
    return EXIT_BUDGET if res.budget_failures else EXIT_INVALID


def _default_ids(net_a, net_b) -> list[int]:
    """Column-1 and last-column clique ids when present, else every shared id."""
    common = sorted(set(net_a.ids) & set(net_b.ids))
    labs = net_a.graph.labels or ()
    cols = [lab.i for lab in labs if isinstance(lab, CliqueCoord)]
    if not cols:
        return common
    last = max(cols)
    ends = {
        net_a.ids[v] for v, lab in enumerate(labs) if isinstance(lab, CliqueCoord) and lab.i in (1, last)
    }
    return [x for x in common if x in ends]


def cmd_compare(args) -> int:
    Ga, Gb = io.read_graph(args.graph_a), io.read_graph(args.graph_b)
    k = args.k
    if k is None:
        k = infer_scheme(Ga.labels).gadget_k if Ga.labels is not None else 0
    net_a, net_b = make_network(Ga, k), make_network(Gb, k)
    ids = args.ids if args.ids else _default_ids(net_a, net_b)
    missing = [x for x in ids if x not in set(net_a.ids) or x not in set(net_b.ids)]
    if missing:
        raise UsageError(f"ids not present in both graphs: {missing[:10]}")
    rep = indistinguishability_report(net_a, net_b, ids, args.radius)
    _emit(rep, args.out)
    return EXIT_OK if rep["verdict"] == "indistinguishable" else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kpartial", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate gadget graphs")
    g.add_argument("kind", choices=["path-of-cliques", "indist-pair", "gadget-transform"])
    g.add_argument("--k", type=int)
    g.add_argument("--l", type=int)
    g.add_argument("--perms", help="JSON list of 1-based image arrays")
    g.add_argument("--spec", help="path-of-cliques JSON spec (file or literal)")
    g.add_argument("--middle-perm", help="comma-separated images, default cyclic shift")
    g.add_argument("--graph", help="input graph for gadget-transform")
    g.add_argument("--out", required=True)
    g.add_argument("--dot", action="store_true", help="also write a .dot file")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check a k-partial c-coloring")
    v.add_argument("--graph", required=True)
    v.add_argument("--coloring", required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--c", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("color", help="compute a coloring")
    c.add_argument("--graph", required=True)
    c.add_argument("--mode", choices=["greedy", "exact"], default="greedy")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--c", type=int, help="palette size (exact mode, default k)")
    c.add_argument("--budget", type=int, default=2_000_000)
    c.add_argument("--out")
    c.set_defaults(func=cmd_color)

    d = sub.add_parser("demo-lower-bound", help="run an algorithm on the indistinguishable pair")
    d.add_argument("--k", type=int, default=3)
    d.add_argument("--l", type=int, default=6)
    d.add_argument("--algo", choices=sorted(CORPUS), default="constant")
    d.add_argument("--rounds", type=int, help="default: the largest admissible budget")
    d.add_argument("--middle-perm")
    d.add_argument("--out")
    d.set_defaults(func=cmd_demo_lower_bound)

    s = sub.add_parser("search-obstructions", help="find small graphs without a k-partial k-coloring")
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--max-n", type=int, default=7)
    s.add_argument("--no-clique", action=argparse.BooleanOptionalAction, default=True,
                   help="discard graphs containing a (k+1)-clique")
    s.add_argument("--max-degree", type=int, help="keep only graphs with this maximum degree")
    s.add_argument("--budget", type=int, default=100_000, help="search nodes per candidate")
    s.add_argument("--iso-reduce", action="store_true", help="one graph per isomorphism class (n <= 7)")
    s.add_argument("--all", action="store_true", help="collect every hit instead of the first")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    cv = sub.add_parser("sim-compare-views", help="compare radius views across two networks")
    cv.add_argument("--graph-a", required=True)
    cv.add_argument("--graph-b", required=True)
    cv.add_argument("--radius", type=int, required=True)
    cv.add_argument("--ids", type=int, nargs="*")
    cv.add_argument("--k", type=int, help="k placed in every node's input")
    cv.add_argument("--out")
    cv.set_defaults(func=cmd_compare)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError, FileNotFoundError) as exc:
        print(f"kpartial {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
