"""Simple undirected graphs on dense integer ids, plus generators.

Every generator documents its vertex numbering so decompositions built in
:mod:`orthodecomp.constructions` can be written down by formula.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, OrthoError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph with vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge] = frozenset()
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise OrthoError(f"negative vertex count {self.n}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise OrthoError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise OrthoError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            norm.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n:
                raise OrthoError("labels must have one entry per vertex")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> Graph:
        return cls(n, frozenset(_norm(int(u), int(v)) for u, v in edges), labels)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        """Neighbourhoods as bitmasks, for the subset-enumerating oracles."""
        return tuple(sum(1 << w for w in nb) for nb in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components of ``G - removed``, each sorted, ordered by least vertex."""
        gone = set(removed)
        seen = set(gone)
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def induced(self, keep: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``keep``, relabelled densely; returns (graph, old ids)."""
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [(new_id[u], new_id[v]) for u, v in self.edges if u in new_id and v in new_id]
        labels = None if self.labels is None else [self.labels[v] for v in old]
        return Graph.from_edges(len(old), edges, labels), old

    def to_dict(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> Graph:
        try:
            return cls.from_edges(int(data["n"]), data.get("edges", []), data.get("labels"))
        except (KeyError, TypeError) as exc:
            raise OrthoError(f"malformed graph JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            label = self.labels[v] if self.labels else str(v)
            lines.append(f'  {v} [label="{label}"];')
        for u, v in self.sorted_edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise OrthoError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves}; the centre is vertex 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_binary_tree(height: int) -> Graph:
    """Heap-numbered complete binary tree; height 0 is a single vertex."""
    n = 2 ** (height + 1) - 1
    return Graph.from_edges(n, ((i, (i - 1) // 2) for i in range(1, n)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def _positive(**params: int) -> None:
    for name, value in params.items():
        if not isinstance(value, int) or value < 1:
            raise OrthoError(f"parameter {name} must be a positive integer, got {value!r}")


def grid(n: int, m: int | None = None) -> Graph:
    """n x m grid, row-major: vertex (r, c) is ``r * m + c``."""
    m = n if m is None else m
    _positive(n=n, m=m)
    edges = []
    for r in range(n):
        for c in range(m):
            v = r * m + c
            if c + 1 < m:
                edges.append((v, v + 1))
            if r + 1 < n:
                edges.append((v, v + m))
    labels = [f"({r},{c})" for r in range(n) for c in range(m)]
    return Graph.from_edges(n * m, edges, labels)


def complete_bipartite(n: int, m: int | None = None) -> Graph:
    """K_{n,m}: v_1..v_n are ``0..n-1``, w_1..w_m are ``n..n+m-1``."""
    m = n if m is None else m
    _positive(n=n, m=m)
    labels = [f"v{i + 1}" for i in range(n)] + [f"w{j + 1}" for j in range(m)]
    return Graph.from_edges(n + m, ((i, n + j) for i in range(n) for j in range(m)), labels)


def complete_tripartite(n: int) -> Graph:
    """K_{n,n,n}; part p occupies ``p*n .. p*n+n-1``."""
    _positive(n=n)
    edges = [
        (p * n + i, q * n + j)
        for p, q in ((0, 1), (0, 2), (1, 2))
        for i in range(n)
        for j in range(n)
    ]
    return Graph.from_edges(3 * n, edges)


def subdivided_knn(n: int) -> Graph:
    """1-subdivision of K_{n,n}.

    v_i is ``i``, w_j is ``n + j`` and the division vertex x_{i,j} of edge
    v_i w_j is ``2n + i*n + j`` (0-based i, j).
    """
    _positive(n=n)
    edges = []
    labels = [f"v{i + 1}" for i in range(n)] + [f"w{j + 1}" for j in range(n)]
    for i in range(n):
        for j in range(n):
            x = 2 * n + i * n + j
            edges += [(i, x), (n + j, x)]
    labels += [f"x{i + 1},{j + 1}" for i in range(n) for j in range(n)]
    return Graph.from_edges(n * n + 2 * n, edges, labels)


def add_dominant(g: Graph) -> Graph:
    """Append one vertex (id ``g.n``) adjacent to every existing vertex."""
    labels = None if g.labels is None else list(g.labels) + ["dom"]
    return Graph.from_edges(g.n + 1, list(g.edges) + [(v, g.n) for v in range(g.n)], labels)


_CLASSIC = {
    "grid": grid,
    "complete_bipartite": complete_bipartite,
    "complete_tripartite": complete_tripartite,
    "subdivided_knn": subdivided_knn,
}


def gen_classic(family: str, *args, **params) -> Graph:
    """Dispatch to one of the named families.

    ``add_dominant`` takes a :class:`Graph` positionally (or as ``graph=``);
    the others take integer parameters (``n``, optionally ``m``).
    """
    if family == "add_dominant":
        g = args[0] if args else params.get("graph")
        if not isinstance(g, Graph):
            raise OrthoError("add_dominant needs an existing Graph")
        return add_dominant(g)
    try:
        builder = _CLASSIC[family]
    except KeyError:
        raise OrthoError(f"unknown graph family {family!r}") from None
    return builder(*args, **params)


def gen_shift_graph(n: int) -> Graph:
    """Shift graph H_n on pairs (i, j), 1 <= i < j <= n, in lexicographic order."""
    if not isinstance(n, int) or n < 2:
        raise OrthoError("shift graph needs n >= 2")
    pairs = list(combinations(range(1, n + 1), 2))
    index = {p: k for k, p in enumerate(pairs)}
    edges = [(index[(i, j)], index[(j, l)]) for i, j, l in combinations(range(1, n + 1), 3)]
    return Graph.from_edges(len(pairs), edges, [f"({i},{j})" for i, j in pairs])


def line_graph(g: Graph) -> Graph:
    """L(G): vertex k is the k-th edge of ``g.sorted_edges()``."""
    es = g.sorted_edges()
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for k, (u, v) in enumerate(es):
        incident[u].append(k)
        incident[v].append(k)
    edges = set()
    for inc in incident:
        edges.update(combinations(inc, 2))
    if g.labels is not None:
        labels = [f"{g.labels[u]}-{g.labels[v]}" for u, v in es]
    else:
        labels = [f"{u}-{v}" for u, v in es]
    return Graph.from_edges(len(es), edges, labels)


def line_grid_base(q: int, r: int) -> Graph:
    """The plane graph Y'_{q,r} built from the (q+1) x (q+1) grid.

    Each grid edge is subdivided r times, every internal face gets a vertex
    joined to the 4r subdivision vertices on its boundary, and then the grid
    edges and original grid vertices are deleted.  Subdivision vertices are
    numbered first (horizontal grid edges row-major, then vertical), followed
    by one vertex per face in row-major order.
    """
    _positive(q=q, r=r)
    side = q + 1
    sub: dict[tuple, list[int]] = {}
    nxt = 0
    for row in range(side):
        for col in range(q):
            sub[("h", row, col)] = list(range(nxt, nxt + r))
            nxt += r
    for row in range(q):
        for col in range(side):
            sub[("v", row, col)] = list(range(nxt, nxt + r))
            nxt += r
    edges = []
    for row in range(q):
        for col in range(q):
            face = nxt
            nxt += 1
            around = (
                sub[("h", row, col)]
                + sub[("h", row + 1, col)]
                + sub[("v", row, col)]
                + sub[("v", row, col + 1)]
            )
            edges.extend((face, s) for s in around)
    return Graph.from_edges(nxt, edges)


def gen_line_grid(q: int, r: int) -> Graph:
    """L(Y'_{q,r}); has 4 q^2 r vertices."""
    return line_graph(line_grid_base(q, r))


DEFAULT_EDGE_CAP = 10**6


@dataclass(frozen=True)
class UniversalTwoTree:
    """Height-h, d-branching universal 2-tree T_{h,d}.

    Ids follow a closed form shared by the lazy and materialized modes.
    Level 0 holds vertices 0 and 1 joined by the root edge.  Level i >= 1 holds
    ``d * (2d)**(i-1)`` vertices.  Edges of level i are indexed
    ``0..(2d)**i - 1``: edge e of level i-1 receives children ``e*d + j``
    (j < d) at level i, and child c creates level-i edges ``2c`` (to the
    first endpoint of its parent edge) and ``2c + 1`` (to the second).
    """

    h: int
    d: int
    graph: Graph | None = None
    level: dict[Edge, int] = field(default_factory=dict, compare=False, repr=False)

    @property
    def root_edge(self) -> Edge | None:
        return (0, 1) if self.h >= 0 else None

    def level_offset(self, i: int) -> int:
        """Id of the first level-i vertex."""
        if i <= 0:
            return 0
        return 2 + sum(self.d * (2 * self.d) ** (j - 1) for j in range(1, i))

    def level_vertex_count(self, i: int) -> int:
        return 2 if i == 0 else self.d * (2 * self.d) ** (i - 1)

    def level_edge_count(self, i: int) -> int:
        return (2 * self.d) ** i

    def edge_endpoints(self, i: int, e: int) -> Edge:
        """Endpoints (older vertex, level-i vertex) of level-i edge ``e``."""
        if not 0 <= i <= self.h or not 0 <= e < self.level_edge_count(i):
            raise OrthoError(f"no level-{i} edge {e} in T_{{{self.h},{self.d}}}")
        if i == 0:
            return (0, 1)
        child = e // 2
        a, b = self.edge_endpoints(i - 1, child // self.d)
        vid = self.level_offset(i) + child
        return (a, vid) if e % 2 == 0 else (b, vid)

    def children(self, i: int, e: int) -> list[tuple[int, tuple[int, int]]]:
        """Children of level-i edge ``e``: (vertex id, (its two level-(i+1) edge indices))."""
        if i + 1 > self.h:
            return []
        self.edge_endpoints(i, e)
        base = self.level_offset(i + 1)
        out = []
        for j in range(self.d):
            c = e * self.d + j
            out.append((base + c, (2 * c, 2 * c + 1)))
        return out

    def predicted_edges(self) -> int:
        return sum(self.level_edge_count(i) for i in range(self.h + 1))

    def predicted_vertices(self) -> int:
        if self.h < 0:
            return 0
        return self.level_offset(self.h + 1)

    def iter_edges(self) -> Iterator[tuple[int, int, Edge]]:
        """Yield (level, index, endpoints) level by level."""
        if self.h < 0:
            return
        frontier = [(0, 1)]
        yield 0, 0, (0, 1)
        for i in range(1, self.h + 1):
            base = self.level_offset(i)
            nxt = []
            for e, (a, b) in enumerate(frontier):
                for j in range(self.d):
                    c = e * self.d + j
                    vid = base + c
                    nxt += [(a, vid), (b, vid)]
            for idx, pair in enumerate(nxt):
                yield i, idx, pair
            frontier = nxt


def gen_universal_2tree(
    h: int, d: int, materialize: bool = True, cap: int = DEFAULT_EDGE_CAP
) -> UniversalTwoTree:
    if h < -1 or d < 1:
        raise OrthoError("universal 2-tree needs h >= -1 and d >= 1")
    lazy = UniversalTwoTree(h, d)
    if not materialize:
        return lazy
    if lazy.predicted_edges() > cap:
        raise CapExceeded(
            f"T_{{{h},{d}}} has {lazy.predicted_edges()} edges, over the cap of {cap}"
        )
    level = {}
    for i, _, (a, b) in lazy.iter_edges():
        level[_norm(a, b)] = i
    g = Graph(lazy.predicted_vertices(), frozenset(level))
    return UniversalTwoTree(h, d, g, level)
