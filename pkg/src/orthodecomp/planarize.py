"""Curve arrangements, graph drawings, planarizations and decomposition lifts.

Arrangements and drawings are combinatorial: a curve (or drawn edge) is just
the ordered list of crossing ids met along it.  Genus is carried as metadata
for the bound formulas only.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .decomp import (
    Layering,
    PathDecomposition,
    TreeDecomposition,
    WeakPathDecomposition,
    bfs_layering,
    from_elimination_ordering,
    validate,
)
from .errors import CapExceeded, OrthoError, ValidationError
from .graphs import Graph


@dataclass(frozen=True)
class CurveArrangement:
    curves: tuple[tuple[str, ...], ...]
    genus: int = 0

    def __post_init__(self):
        curves = tuple(tuple(str(c) for c in curve) for curve in self.curves)
        object.__setattr__(self, "curves", curves)
        if self.genus < 0:
            raise ValidationError("genus must be nonnegative")
        seen: dict[str, list[int]] = {}
        for i, curve in enumerate(curves):
            if len(set(curve)) != len(curve):
                dup = min(c for c, n in Counter(curve).items() if n > 1)
                raise ValidationError(f"crossing {dup!r} repeats on curve {i}")
            for c in curve:
                seen.setdefault(c, []).append(i)
        for c, owners in sorted(seen.items()):
            if len(owners) != 2:
                raise ValidationError(
                    f"crossing {c!r} lies on {len(owners)} curves; each crossing joins exactly two"
                )

    @property
    def crossings(self) -> list[str]:
        return sorted({c for curve in self.curves for c in curve})

    @property
    def m(self) -> int:
        return len(self.crossings)

    def owners(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for i, curve in enumerate(self.curves):
            for c in curve:
                out.setdefault(c, []).append(i)
        return {c: (a, b) for c, (a, b) in out.items()}

    def to_dict(self) -> dict:
        return {"genus": self.genus, "curves": [list(c) for c in self.curves]}

    @classmethod
    def from_dict(cls, data: dict) -> CurveArrangement:
        try:
            return cls(tuple(tuple(c) for c in data["curves"]), int(data.get("genus", 0)))
        except (KeyError, TypeError) as exc:
            raise OrthoError(f"malformed arrangement JSON: {exc}") from exc


@dataclass(frozen=True)
class DrawnEdge:
    tail: int
    head: int
    crossings: tuple[str, ...] = ()


@dataclass(frozen=True)
class Drawing:
    """A drawing of ``graph``: every edge oriented, with its crossings from tail to head."""

    graph: Graph
    edges: tuple[DrawnEdge, ...]
    genus: int = 0

    def __post_init__(self):
        edges = tuple(
            DrawnEdge(int(e.tail), int(e.head), tuple(str(c) for c in e.crossings))
            for e in self.edges
        )
        object.__setattr__(self, "edges", edges)
        if self.genus < 0:
            raise ValidationError("genus must be nonnegative")
        drawn = Counter((min(e.tail, e.head), max(e.tail, e.head)) for e in edges)
        if set(drawn) != set(self.graph.edges) or any(n > 1 for n in drawn.values()):
            raise ValidationError("drawing must list every graph edge exactly once")
        seen: dict[str, list[int]] = {}
        for i, e in enumerate(edges):
            if len(set(e.crossings)) != len(e.crossings):
                raise ValidationError(f"a crossing repeats along edge {e.tail}-{e.head}")
            for c in e.crossings:
                seen.setdefault(c, []).append(i)
        for c, on in sorted(seen.items()):
            if len(on) != 2:
                raise ValidationError(f"crossing {c!r} lies on {len(on)} edges, expected 2")

    @property
    def crossings(self) -> list[str]:
        return sorted({c for e in self.edges for c in e.crossings})

    @property
    def m(self) -> int:
        return len(self.crossings)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "genus": self.genus,
            "edges": [
                {"tail": e.tail, "head": e.head, "crossings": list(e.crossings)} for e in self.edges
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Drawing:
        try:
            g = Graph.from_dict(data["graph"])
            edges = tuple(
                DrawnEdge(e["tail"], e["head"], tuple(e.get("crossings", ()))) for e in data["edges"]
            )
            return cls(g, edges, int(data.get("genus", 0)))
        except (KeyError, TypeError) as exc:
            raise OrthoError(f"malformed drawing JSON: {exc}") from exc


@dataclass(frozen=True)
class Planarization:
    """G' with maps back to the source.

    ``owners[x]`` are the source vertices G'-vertex x belongs to (two curves,
    or two edge tails, for a crossing; the vertex itself for an original
    vertex).  ``paths[i]`` is the G'-path traced by curve/edge i.
    """

    gprime: Graph
    owners: tuple[tuple[int, ...], ...]
    crossing_ids: tuple[str | None, ...]
    paths: tuple[tuple[int, ...], ...]
    source_n: int


def string_graph(a: CurveArrangement) -> Graph:
    """One vertex per curve; adjacent iff the curves share a crossing."""
    return Graph.from_edges(len(a.curves), set(a.owners().values()))


def _path_edges(path: Sequence[int]) -> list[tuple[int, int]]:
    return [(path[i], path[i + 1]) for i in range(len(path) - 1)]


def planarize(obj: CurveArrangement | Drawing) -> Planarization:
    if isinstance(obj, CurveArrangement):
        ids = obj.crossings
        vid = {c: i for i, c in enumerate(ids)}
        own = obj.owners()
        paths = tuple(tuple(vid[c] for c in curve) for curve in obj.curves)
        edges = [e for p in paths for e in _path_edges(p)]
        gp = Graph.from_edges(len(ids), edges)
        return Planarization(gp, tuple(own[c] for c in ids), tuple(ids), paths, len(obj.curves))
    if isinstance(obj, Drawing):
        n = obj.graph.n
        ids = obj.crossings
        vid = {c: n + i for i, c in enumerate(ids)}
        tails: dict[str, list[int]] = {}
        paths = []
        for e in obj.edges:
            for c in e.crossings:
                tails.setdefault(c, []).append(e.tail)
            paths.append((e.tail, *(vid[c] for c in e.crossings), e.head))
        edges = [pair for p in paths for pair in _path_edges(p)]
        gp = Graph.from_edges(n + len(ids), edges)
        owners = [(v,) for v in range(n)]
        owners += [tuple(sorted(tails[c])) for c in ids]
        crossing_ids = (None,) * n + tuple(ids)
        return Planarization(gp, tuple(owners), crossing_ids, tuple(paths), n)
    raise OrthoError("planarize expects a CurveArrangement or a Drawing")


def _require(d, g: Graph, what: str) -> None:
    rep = validate(d, g)
    if not rep:
        raise ValidationError(f"{what}: {rep.message}", rep)


def _replace(bags: Iterable[frozenset[int]], owners) -> list[frozenset[int]]:
    return [frozenset(v for x in bag for v in owners[x]) for bag in bags]


def _lift_tree(pl: Planarization, tprime: TreeDecomposition, loose: list[int]) -> TreeDecomposition:
    bags = _replace(tprime.bags, pl.owners)
    if loose:
        bags[0] = bags[0] | frozenset(loose)
    return TreeDecomposition(tuple(bags), tprime.tree_edges)


def _loose_curves(a: CurveArrangement) -> list[int]:
    return [i for i, c in enumerate(a.curves) if not c]


def lift_string_layered(
    a: CurveArrangement, tprime: TreeDecomposition, lprime: Layering, k: int
) -> tuple[TreeDecomposition, Layering]:
    """Tree decomposition and layering of the string graph from a base pair on G'.

    Curve v goes to layer ``f(v) // (k-1)`` where f(v) is the smallest G'-layer
    met by its crossings; crossing-free curves go to layer 0 and bag 0.
    """
    if k < 2:
        raise OrthoError("per-curve cap k must be at least 2")
    for i, curve in enumerate(a.curves):
        if len(curve) > k:
            raise OrthoError(f"curve {i} has {len(curve)} crossings, more than k={k}")
    pl = planarize(a)
    _require(tprime, pl.gprime, "base tree decomposition")
    _require(lprime, pl.gprime, "base layering")
    t = _lift_tree(pl, tprime, _loose_curves(a))
    where = lprime.layer_of()
    group = []
    for path in pl.paths:
        f = min((where[x] for x in path), default=0)
        group.append(f // (k - 1))
    layers = [set() for _ in range(max(group, default=-1) + 1)]
    for v, gidx in enumerate(group):
        layers[gidx].add(v)
    return t, Layering(tuple(layers))


def lift_string_path(
    a: CurveArrangement, tprime: TreeDecomposition, lprime: Layering
) -> tuple[TreeDecomposition, PathDecomposition]:
    """P_i holds both curves through each crossing of G'-layer i."""
    pl = planarize(a)
    _require(tprime, pl.gprime, "base tree decomposition")
    _require(lprime, pl.gprime, "base layering")
    loose = _loose_curves(a)
    t = _lift_tree(pl, tprime, loose)
    bags = _replace(lprime.layers, pl.owners) or [frozenset()]
    if loose:
        bags[0] = bags[0] | frozenset(loose)
    return t, PathDecomposition(tuple(bags))


def lift_drawing(
    d: Drawing, tprime: TreeDecomposition, lprime: Layering
) -> tuple[TreeDecomposition, WeakPathDecomposition]:
    """Replace each crossing of G' by the tails of its two edges, in both T' and L'."""
    pl = planarize(d)
    _require(tprime, pl.gprime, "base tree decomposition")
    _require(lprime, pl.gprime, "base layering")
    t = TreeDecomposition(tuple(_replace(tprime.bags, pl.owners)), tprime.tree_edges)
    p = WeakPathDecomposition(tuple(_replace(lprime.layers, pl.owners)))
    return t, p


def lift_occurrences(pl: Planarization, lprime: Layering) -> int:
    """Vertex occurrences produced by the replacement, before merging repeats within a bag."""
    return sum(len(pl.owners[x]) for layer in lprime.layers for x in layer)


EXACT_BASE_CAP = 14


def min_fill_ordering(g: Graph, seed: int | None = None) -> list[int]:
    """Greedy min-fill elimination; ties go to lower degree, then lower id (or a seeded shuffle)."""
    nbrs = [set(a) for a in g.adj]
    rank = list(range(g.n))
    if seed is not None:
        random.Random(seed).shuffle(rank)
    remaining = set(g.vertices)
    order = []
    while remaining:

        def fill(v: int) -> int:
            nb = list(nbrs[v])
            return sum(1 for i in range(len(nb)) for j in range(i) if nb[j] not in nbrs[nb[i]])

        v = min(remaining, key=lambda u: (fill(u), len(nbrs[u]), rank[u]))
        nb = nbrs[v]
        for u in nb:
            nbrs[u] |= nb - {u}
            nbrs[u].discard(v)
        remaining.discard(v)
        order.append(v)
    return order


def base_decomposition(
    gp: Graph,
    mode: str = "heuristic",
    root: int = 0,
    seed: int | None = None,
    cap: int = EXACT_BASE_CAP,
) -> tuple[TreeDecomposition, Layering]:
    """BFS layering from ``root`` plus a tree decomposition of G'.

    The layered width of the pair is whatever it measures to be; nothing here
    guarantees a bound.
    """
    layering = bfs_layering(gp, root) if gp.n else Layering(())
    if mode == "heuristic":
        t = from_elimination_ordering(gp, min_fill_ordering(gp, seed))
    elif mode == "exact":
        if gp.n > cap:
            raise CapExceeded(f"exact base decomposition is capped at {cap} vertices")
        from .oracles import exact_treewidth

        _, t = exact_treewidth(gp, cap=cap)
    else:
        raise OrthoError(f"unknown base mode {mode!r}")
    return t, layering


def crossing_lower_bound(tw: int, n: int) -> Fraction:
    """max(0, (tw + 1)^2 / 48 - n / 2), exactly."""
    if tw < 0 or n < 0:
        raise OrthoError("tw and n must be nonnegative")
    return max(Fraction(0), Fraction((tw + 1) ** 2, 48) - Fraction(n, 2))


def random_arrangement(
    rng: random.Random, curves: int, crossings: int, genus: int = 0, cover: bool = True
) -> CurveArrangement:
    """Random combinatorial arrangement; with ``cover`` every curve gets a crossing."""
    if curves < 2 and crossings:
        raise OrthoError("crossings need at least two curves")
    pairs = []
    if cover:
        order = list(range(curves))
        rng.shuffle(order)
        for i in range(0, curves - 1, 2):
            pairs.append((order[i], order[i + 1]))
        if curves % 2 and curves > 1:
            pairs.append((order[-1], rng.choice(order[:-1])))
    while len(pairs) < crossings:
        pairs.append(tuple(rng.sample(range(curves), 2)))
    on: list[list[str]] = [[] for _ in range(curves)]
    for idx, (u, v) in enumerate(pairs):
        cid = f"c{idx}"
        on[u].append(cid)
        on[v].append(cid)
    for lst in on:
        rng.shuffle(lst)
    return CurveArrangement(tuple(tuple(c) for c in on), genus)


def random_drawing(
    rng: random.Random, n: int, m_crossings: int, edge_prob: float = 0.5, genus: int = 0
) -> Drawing:
    """Random graph with randomly oriented edges and random pairwise crossings."""
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob]
    if len(edges) < 2:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)][: max(2, len(edges))]
    g = Graph.from_edges(n, edges)
    es = g.sorted_edges()
    on: list[list[str]] = [[] for _ in es]
    for idx in range(m_crossings if len(es) >= 2 else 0):
        a, b = rng.sample(range(len(es)), 2)
        cid = f"x{idx}"
        on[a].append(cid)
        on[b].append(cid)
    drawn = []
    for (u, v), lst in zip(es, on):
        rng.shuffle(lst)
        if rng.random() < 0.5:
            u, v = v, u
        drawn.append(DrawnEdge(u, v, tuple(lst)))
    return Drawing(g, tuple(drawn), genus)
