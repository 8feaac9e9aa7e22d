"""Command-line entry point: ``orthodecomp <command> ...``.

Every command writes one JSON document (or DOT with ``--format dot``) to
stdout.  Files named ``-`` are read from stdin.  Exit codes: 0 success,
1 invalid input, 2 validation failure, 3 size cap exceeded; on failure a JSON
error object goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import compress as cmp
from . import constructions as cons
from . import decomp as dc
from . import graphs as gr
from . import oracles as orc
from . import planarize as pz
from . import rects as rc
from .errors import CapExceeded, OrthoError, ValidationError

DEFAULT_ROOT = (rc.Rect(0, 4, 0, 4), rc.Rect(2, 6, 1, 5))


class _Fail(Exception):
    def __init__(self, code: int, payload: dict):
        super().__init__(payload.get("message", ""))
        self.code = code
        self.payload = payload


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_default) + "\n"


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise OrthoError(f"cannot read JSON from {path}: {exc}") from exc


def _bundle(graph: gr.Graph | None, decomps, **extra) -> dict:
    out = dict(extra)
    if graph is not None:
        out["graph"] = graph.to_dict()
    out["decompositions"] = [dc.to_dict(d) for d in decomps]
    return out


def _unpack(data) -> tuple[gr.Graph | None, list]:
    """Graph and decompositions from a bundle, a bare decomposition, or a bare graph."""
    if not isinstance(data, dict):
        raise OrthoError("expected a JSON object")
    if "kind" in data:
        return None, [dc.from_dict(data)]
    if "decompositions" in data or "graph" in data:
        g = gr.Graph.from_dict(data["graph"]) if "graph" in data else None
        return g, [dc.from_dict(d) for d in data.get("decompositions", [])]
    if "n" in data:
        return gr.Graph.from_dict(data), []
    raise OrthoError("unrecognised JSON document")


def _graph_from(path: str) -> gr.Graph:
    g, _ = _unpack(_load(path))
    if g is None:
        raise OrthoError(f"{path} holds no graph")
    return g


def _decomp_from(path: str, kinds: tuple[str, ...]):
    _, ds = _unpack(_load(path))
    for d in ds:
        if d.kind in kinds:
            return d
    raise OrthoError(f"{path} holds no decomposition of kind {'/'.join(kinds)}")


def _require_valid(d, g: gr.Graph, what: str) -> None:
    rep = dc.validate(d, g)
    if not rep:
        raise ValidationError(f"{what}: {rep.message}", rep)


def _emit(args, obj, dot: str | None = None) -> None:
    if getattr(args, "format", "json") == "dot":
        if dot is None:
            raise OrthoError("this command has no DOT form")
        sys.stdout.write(dot)
    else:
        sys.stdout.write(obj if isinstance(obj, str) else dumps(obj))


# -- gen ---------------------------------------------------------------------


def _universal_params(args) -> tuple[int, int]:
    if args.k is None:
        if args.h is None or args.d is None:
            raise OrthoError("universal-2tree needs --h and --d, or --k with --param")
        return args.h, args.d
    k = args.k
    if k < 3:
        raise OrthoError("--k must be at least 3")
    if args.param == "proof":
        return (k - 1) ** 2, 4 * k - 7
    return 4 * k - 7, 2 * k * k


def cmd_gen(args) -> None:
    fam = args.family.replace("-", "_")
    n, m = args.n, args.m
    if fam == "universal_2tree":
        h, d = _universal_params(args)
        tree = gr.gen_universal_2tree(h, d, materialize=not args.lazy, cap=args.cap)
        if args.lazy:
            _emit(args, {
                "h": h,
                "d": d,
                "predicted_edges": tree.predicted_edges(),
                "predicted_vertices": tree.predicted_vertices(),
            })
            return
        g = tree.graph
    elif fam == "add_dominant":
        if not args.graph:
            raise OrthoError("add-dominant needs --graph")
        g = gr.add_dominant(_graph_from(args.graph))
    elif fam == "shift":
        g = gr.gen_shift_graph(_need(n, "--n"))
    elif fam == "line_grid":
        g = gr.gen_line_grid(_need(args.q, "--q"), _need(args.r, "--r"))
    elif fam in _SIMPLE:
        g = _SIMPLE[fam](_need(n, "--n"))
    else:
        params = [_need(n, "--n")] + ([m] if m is not None else [])
        g = gr.gen_classic(fam, *params)
    _emit(args, g.to_dict(), g.to_dot())


def _need(value, flag: str):
    if value is None:
        raise OrthoError(f"missing {flag}")
    return value


_SIMPLE = {
    "complete": gr.complete_graph,
    "path": gr.path_graph,
    "cycle": gr.cycle_graph,
    "star": gr.star_graph,
    "binary_tree": gr.complete_binary_tree,
}


# -- check / ortho -------------------------------------------------------------


def cmd_check(args) -> None:
    g, ds = _unpack(_load(args.file))
    if args.graph:
        g = _graph_from(args.graph)
    if g is None:
        raise OrthoError("no graph to check against; pass a bundle or --graph")
    if not ds:
        raise OrthoError("no decompositions to check")
    reports = [dc.validate(d, g).to_dict() for d in ds]
    out = {"ok": all(r["ok"] for r in reports), "reports": reports}
    if not out["ok"]:
        raise _Fail(2, {"error": "validation", "message": "decomposition invalid", **out})
    _emit(args, out)


def cmd_ortho(args) -> None:
    graph, found = None, []
    for path in args.files:
        g, ds = _unpack(_load(path))
        graph = graph or g
        found.extend(ds)
    if len(found) != 2:
        raise OrthoError(f"need exactly two decompositions, got {len(found)}")
    if graph is not None:
        for d in found:
            _require_valid(d, graph, f"{d.kind} decomposition")
    _emit(args, dumps(dc.orthogonality(*found)))


# -- construct -----------------------------------------------------------------


def cmd_construct(args) -> None:
    what = args.what
    if what == "grid-pair":
        n = _need(args.n, "--n")
        g, ds = gr.grid(n, n), cons.grid_orthogonal_paths(n)
    elif what == "knn-pair":
        n = _need(args.n, "--n")
        g, ds = gr.complete_bipartite(n, n), cons.knn_orthogonal_paths(n)
    elif what == "star-pair":
        if args.graph:
            g = _graph_from(args.graph)
            a = [int(x) for x in _need(args.part, "--part").split(",") if x]
        else:
            n = _need(args.n, "--n")
            g, a = gr.complete_bipartite(n, n), list(range(n))
        b = [v for v in g.vertices if v not in set(a)]
        ds = cons.bipartite_star_pair(g, a, b)
    elif what == "subdiv-pair":
        n = _need(args.n, "--n")
        g, ds = gr.subdivided_knn(n), cons.subdivision_star_pair(n)
    elif what == "domino":
        g = _graph_from(_need(args.graph, "--graph"))
        if args.tree:
            t = _decomp_from(args.tree, ("tree", "path"))
            t = t if isinstance(t, dc.TreeDecomposition) else dc.TreeDecomposition.from_path(t)
        else:
            t = dc.from_elimination_ordering(g, pz.min_fill_ordering(g))
        lay = _decomp_from(args.layering, ("layering",)) if args.layering else dc.bfs_layering(g, args.root)
        ds = (t, cons.domino_from_layered(t, lay, g))
    else:
        raise OrthoError(f"unknown construction {what!r}")
    for d in ds:
        _require_valid(d, g, f"constructed {d.kind}")
    _emit(args, _bundle(g, ds, orthogonality=dc.orthogonality(*ds)), dc.to_dot(ds[0]))


# -- compress / separator --------------------------------------------------------


def _as_weak(d) -> dc.WeakPathDecomposition:
    return d if isinstance(d, dc.WeakPathDecomposition) else dc.WeakPathDecomposition(d.bags)


def _as_tree(d) -> dc.TreeDecomposition:
    return d if isinstance(d, dc.TreeDecomposition) else dc.TreeDecomposition.from_path(d)


def cmd_compress(args) -> None:
    g = _graph_from(args.graph)
    t = _as_tree(_decomp_from(args.tree, ("tree", "path")))
    p = _as_weak(_decomp_from(args.weakpath, ("weakpath", "path", "layering")))
    _require_valid(t, g, "tree decomposition")
    _require_valid(p, g, "weak path decomposition")
    k = args.k if args.k is not None else dc.orthogonality(t, p)
    res = cmp.compress(g, t, p, k)
    out = _bundle(g, [res.decomposition], result=res.to_dict())
    _emit(args, out, dc.to_dot(res.decomposition))


def cmd_separator(args) -> None:
    g = _graph_from(args.graph)
    t = _as_tree(_decomp_from(args.tree, ("tree", "path")))
    sep = cmp.separator_from_decomposition(g, t)
    comps = g.components(sep)
    _emit(args, {
        "separator": sorted(sep),
        "size": len(sep),
        "largest_component": max((len(c) for c in comps), default=0),
        "n": g.n,
    })


# -- lift ------------------------------------------------------------------------


def cmd_lift(args) -> None:
    data = _load(args.input)
    if args.kind == "string":
        source = pz.CurveArrangement.from_dict(data)
    else:
        source = pz.Drawing.from_dict(data)
    pl = pz.planarize(source)
    tprime, lprime = pz.base_decomposition(pl.gprime, args.base, seed=args.seed)
    if args.kind == "string":
        g = pz.string_graph(source)
        if args.k is not None:
            t, p = pz.lift_string_layered(source, tprime, lprime, args.k)
        else:
            t, p = pz.lift_string_path(source, tprime, lprime)
    else:
        g = source.graph
        t, p = pz.lift_drawing(source, tprime, lprime)
    for d in (t, p):
        _require_valid(d, g, f"lifted {d.kind}")
    report = {
        "base_layered_width": dc.layered_width(tprime, lprime),
        "base_width": dc.width(tprime),
        "crossings": source.m,
        "occurrences": pz.lift_occurrences(pl, lprime),
        "width": dc.width(t),
    }
    if isinstance(p, dc.Layering):
        report["layered_width"] = dc.layered_width(t, p)
    else:
        report["magnitude"] = dc.magnitude(p)
        report["orthogonality"] = dc.orthogonality(t, p)
    _emit(args, _bundle(g, [t, p], report=report), dc.to_dot(t))


# -- bounds ------------------------------------------------------------------------


def cmd_bounds(args) -> None:
    vals = dict(k=args.k, s=args.s, n=args.n, g=args.g, m=args.m, tw=args.tw, c=args.c)
    out = cmp.bounds_report(**vals)
    _emit(args, {"inputs": {k: v for k, v in vals.items() if v is not None}, "bounds": out})


# -- rect / box ----------------------------------------------------------------------


def _rects_from(path: str) -> list[rc.Rect]:
    return rc.rects_from_dict(_load(path))


def _make_oracle(name: str, seed: int):
    if name == "random":
        return rc.random_oracle(seed)
    if name in ("stall-h", "stall-v"):
        return rc.stall_oracle(name[-1].upper())
    if name == "corner":
        return rc.corner_oracle()
    if name.startswith("file:"):
        return rc.pool_oracle(_rects_from(name[5:]))
    raise OrthoError(f"unknown oracle {name!r}")


def _clique_run(oracle: str, seed: int, k: int, root) -> dict:
    res = rc.find_clique(root, _make_oracle(oracle, seed), k)
    out = res.to_dict()
    out["seed"] = seed
    out["verified"] = rc.verify_clique(res.shapes, res.point)
    out["budget"] = rc.clique_budget(k)
    return out


def _clique_task(job) -> dict:
    return _clique_run(*job)


def cmd_rect(args) -> None:
    op = args.op
    if op == "classify":
        rs = _rects_from(args.input)
        if len(rs) != 2:
            raise OrthoError("classify takes exactly two rectangles")
        _emit(args, {"type": rc.classify_pair(rs[0], rs[1])})
    elif op == "hvo":
        chk = rc.is_hvo_alternating(_rects_from(args.input))
        _emit(args, {"ok": chk.ok, "index": chk.index, "condition": chk.condition})
    elif op == "clique":
        if args.input:
            root = tuple(_rects_from(args.input)[:2])
        elif args.oracle.startswith("file:"):
            root = tuple(_rects_from(args.oracle[5:])[:2])
        else:
            root = DEFAULT_ROOT
        if len(root) != 2:
            raise OrthoError("clique needs two root rectangles")
        seeds = range(args.seed, args.seed + args.count)
        jobs = [(args.oracle, s, args.k, root) for s in seeds]
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                runs = list(pool.map(_clique_task, jobs))
        else:
            runs = [_clique_task(j) for j in jobs]
        _emit(args, runs[0] if args.count == 1 else {"runs": runs})
    elif op == "to-paths":
        rs = _rects_from(args.input)
        p1, p2 = rc.rects_to_paths(rs)
        g = rc.rect_graph(rs)
        _emit(args, _bundle(g, [p1, p2], orthogonality=dc.orthogonality(p1, p2)))
    elif op == "from-paths":
        g, ds = _unpack(_load(args.input))
        paths = [d for d in ds if d.kind == "path"]
        if len(paths) != 2:
            raise OrthoError("from-paths needs two path decompositions")
        if g is not None:
            for d in paths:
                _require_valid(d, g, "path decomposition")
        mapping = rc.paths_to_rects(*paths)
        _emit(args, rc.rects_to_dict([mapping[v] for v in sorted(mapping)]))
    else:
        raise OrthoError(f"unknown rect operation {op!r}")


def cmd_box(args) -> None:
    rng = random.Random(args.seed)
    root = rc.random_root_boxes(rng, args.d)
    res = rc.box_find_clique(root, rc.random_box_oracle(args.seed), args.k, args.d)
    out = res.to_dict()
    out["verified"] = rc.verify_clique(res.boxes, res.point)
    _emit(args, out)


# -- oracle ------------------------------------------------------------------------


def cmd_oracle(args) -> None:
    g = _graph_from(args.graph)
    what = args.what
    if what == "tw":
        val, d = orc.exact_treewidth(g, cap=args.cap or orc.TREEWIDTH_CAP)
        out = {"treewidth": val, "decomposition": dc.to_dict(d)}
    elif what == "pw":
        val, d = orc.exact_pathwidth(g, cap=args.cap or orc.PATHWIDTH_CAP)
        out = {"pathwidth": val, "decomposition": dc.to_dict(d)}
    elif what == "clique":
        val, w = orc.max_clique(g, cap=args.cap or orc.CLIQUE_CAP)
        out = {"clique": val, "witness": w}
    elif what == "chi":
        val, col = orc.chromatic_number(g, cap=args.cap or orc.CHROMATIC_CAP)
        out = {"chromatic": val, "colouring": col}
    else:
        val, s = orc.min_separator_size(g, cap=args.cap or orc.SEPARATOR_CAP)
        out = {"separator": val, "witness": s}
    _emit(args, out)


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orthodecomp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=["json", "dot"], default="json")
        return p

    p = add("gen", cmd_gen, "generate a graph")
    p.add_argument("family")
    for flag in ("--n", "--m", "--q", "--r", "--h", "--d", "--k"):
        p.add_argument(flag, type=int)
    p.add_argument("--param", choices=["proof", "statement"], default="proof",
                   help="universal 2-tree sizing from --k")
    p.add_argument("--lazy", action="store_true", help="report sizes only")
    p.add_argument("--cap", type=int, default=gr.DEFAULT_EDGE_CAP)
    p.add_argument("--graph")

    p = add("check", cmd_check, "validate decompositions against a graph")
    p.add_argument("file")
    p.add_argument("--graph")

    p = add("ortho", cmd_ortho, "orthogonality of two decompositions")
    p.add_argument("files", nargs="+")

    p = add("construct", cmd_construct, "build an orthogonal pair")
    p.add_argument("what", choices=["grid-pair", "knn-pair", "star-pair", "subdiv-pair", "domino"])
    p.add_argument("--n", type=int)
    p.add_argument("--graph")
    p.add_argument("--part", help="comma-separated first side for star-pair")
    p.add_argument("--tree")
    p.add_argument("--layering")
    p.add_argument("--root", type=int, default=0)

    p = add("compress", cmd_compress, "width compression certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--weakpath", required=True)
    p.add_argument("--k", type=int)

    p = add("separator", cmd_separator, "balanced separator from a tree decomposition")
    p.add_argument("--graph", required=True)
    p.add_argument("--tree", required=True)

    p = add("lift", cmd_lift, "lift a decomposition through a planarization")
    p.add_argument("kind", choices=["string", "drawing"])
    p.add_argument("--input", required=True)
    p.add_argument("--base", choices=["heuristic", "exact"], default="heuristic")
    p.add_argument("--k", type=int, help="string only: crossings per curve, gives a layering")
    p.add_argument("--seed", type=int)

    p = add("bounds", cmd_bounds, "evaluate numeric bounds")
    for flag in ("--k", "--s", "--n", "--g", "--m", "--tw", "--c"):
        p.add_argument(flag, type=int)

    p = add("rect", cmd_rect, "rectangle operations")
    p.add_argument("op", choices=["classify", "hvo", "clique", "to-paths", "from-paths"])
    p.add_argument("--input")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--oracle", default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1, help="clique: run this many consecutive seeds")
    p.add_argument("--jobs", type=int, default=1)

    p = add("box", cmd_box, "box clique search")
    p.add_argument("op", choices=["clique"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = add("oracle", cmd_oracle, "exact small-graph computations")
    p.add_argument("what", choices=["tw", "pw", "clique", "chi", "sep"])
    p.add_argument("graph")
    p.add_argument("--cap", type=int)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "input", "") is None and args.command == "rect" and args.op != "clique":
        args.input = "-"
    try:
        args.func(args)
    except _Fail as exc:
        sys.stderr.write(dumps(exc.payload))
        return exc.code
    except ValidationError as exc:
        payload = {"error": "validation", "message": str(exc)}
        if exc.report is not None:
            payload["report"] = exc.report.to_dict()
        sys.stderr.write(dumps(payload))
        return 2
    except CapExceeded as exc:
        sys.stderr.write(dumps({"error": "cap", "message": str(exc)}))
        return 3
    except OrthoError as exc:
        sys.stderr.write(dumps({"error": "invalid", "message": str(exc)}))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
