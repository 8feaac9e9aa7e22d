"""Tree/path decompositions, weak path decompositions and layerings.

All four are bag sequences; a tree decomposition additionally carries tree
edges over the bag indices.  Empty bags are allowed everywhere.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import OrthoError
from .graphs import Graph

Bag = frozenset


def _bags(bags: Iterable[Iterable[int]]) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(int(v) for v in b) for b in bags)


@dataclass(frozen=True)
class _BagSequence:
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", _bags(self.bags))

    @property
    def universe(self) -> frozenset[int]:
        return frozenset().union(*self.bags)

    def __len__(self) -> int:
        return len(self.bags)


@dataclass(frozen=True)
class PathDecomposition(_BagSequence):
    kind = "path"

    @property
    def tree_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, i + 1) for i in range(len(self.bags) - 1))


@dataclass(frozen=True)
class WeakPathDecomposition(_BagSequence):
    kind = "weakpath"

    @property
    def tree_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, i + 1) for i in range(len(self.bags) - 1))


@dataclass(frozen=True)
class Layering(_BagSequence):
    kind = "layering"

    @property
    def layers(self) -> tuple[frozenset[int], ...]:
        return self.bags

    def layer_of(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.bags) for v in layer}


@dataclass(frozen=True)
class TreeDecomposition(_BagSequence):
    """Bags indexed 0..b-1 with tree edges over those indices."""

    tree_edges: tuple[tuple[int, int], ...] = ()
    kind = "tree"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(
            self,
            "tree_edges",
            tuple(sorted((min(x, y), max(x, y)) for x, y in self.tree_edges)),
        )

    @classmethod
    def from_path(cls, p: Sequence[Iterable[int]] | _BagSequence) -> TreeDecomposition:
        bags = p.bags if isinstance(p, _BagSequence) else _bags(p)
        return cls(bags, tuple((i, i + 1) for i in range(len(bags) - 1)))

    def neighbours(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for x, y in self.tree_edges:
            nb[x].append(y)
            nb[y].append(x)
        return nb


Decomposition = Union[TreeDecomposition, PathDecomposition, WeakPathDecomposition, Layering]


@dataclass(frozen=True)
class Report:
    """Outcome of :func:`validate`; truthy iff every axiom holds."""

    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "axiom": self.axiom,
            "witness": None if self.witness is None else list(self.witness),
            "message": self.message,
        }


def _fail(axiom: str, witness: tuple, message: str) -> Report:
    return Report(False, axiom, witness, message)


def _tree_shape(d: TreeDecomposition) -> Report | None:
    b = len(d.bags)
    if b == 0:
        return _fail("tree", (), "a tree decomposition needs at least one node")
    for x, y in d.tree_edges:
        if not (0 <= x < b and 0 <= y < b) or x == y:
            return _fail("tree", (x, y), f"tree edge ({x},{y}) is not between distinct nodes")
    if len(set(d.tree_edges)) != len(d.tree_edges) or len(d.tree_edges) != b - 1:
        return _fail("tree", (), f"{b} nodes need exactly {b - 1} distinct tree edges")
    nb = d.neighbours()
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in nb[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != b:
        missing = min(set(range(b)) - seen)
        return _fail("tree", (missing,), f"tree is disconnected at node {missing}")
    return None


def _support_connected(nodes: list[int], nb: list[list[int]]) -> bool:
    members = set(nodes)
    start = nodes[0]
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in nb[x]:
            if y in members and y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(members)


def validate(d: Decomposition, g: Graph) -> Report:
    """Check ``d`` against ``g``.

    Axioms are tested in a fixed order (bag range, coverage, edge coverage,
    connectivity; layerings: range, partition, edge span) and the first failure
    is reported with its smallest witness.
    """
    if isinstance(d, TreeDecomposition):
        bad = _tree_shape(d)
        if bad is not None:
            return bad
    for i, bag in enumerate(d.bags):
        outside = [v for v in bag if not 0 <= v < g.n]
        if outside:
            return _fail("range", (i, min(outside)), f"bag {i} holds {min(outside)}, not a vertex")

    occurrences: dict[int, list[int]] = {v: [] for v in g.vertices}
    for i, bag in enumerate(d.bags):
        for v in bag:
            occurrences[v].append(i)

    if isinstance(d, Layering):
        for v in g.vertices:
            if not occurrences[v]:
                return _fail("coverage", (v,), f"vertex {v} is in no layer")
            if len(occurrences[v]) > 1:
                return _fail("partition", (v,), f"vertex {v} is in several layers")
        where = d.layer_of()
        for u, v in g.sorted_edges():
            if abs(where[u] - where[v]) > 1:
                return _fail("edge_span", (u, v), f"edge {u}-{v} skips a layer")
        return Report(True)

    for v in g.vertices:
        if not occurrences[v]:
            return _fail("coverage", (v,), f"vertex {v} is in no bag")

    if isinstance(d, WeakPathDecomposition):
        last = len(d.bags) - 1
        for u, v in g.sorted_edges():
            starts = {j for i in occurrences[u] for j in (i - 1, i) if 0 <= j}
            ok = any(
                {u, v} <= (d.bags[j] | (d.bags[j + 1] if j < last else frozenset()))
                for j in starts
            )
            if not ok:
                return _fail("edge", (u, v), f"edge {u}-{v} is not within two consecutive bags")
    else:
        for u, v in g.sorted_edges():
            if not any(v in d.bags[i] for i in occurrences[u]):
                return _fail("edge", (u, v), f"edge {u}-{v} is in no bag")

    if isinstance(d, TreeDecomposition):
        nb = d.neighbours()
        for v in g.vertices:
            if not _support_connected(occurrences[v], nb):
                return _fail("connectivity", (v,), f"bags containing {v} are not connected")
    else:
        for v in g.vertices:
            occ = occurrences[v]
            if occ[-1] - occ[0] + 1 != len(occ):
                return _fail("connectivity", (v,), f"bags containing {v} are not consecutive")
    return Report(True)


def width(d: Decomposition) -> int:
    return max((len(b) for b in d.bags), default=0) - 1


def magnitude(d: Decomposition) -> int:
    return sum(len(b) for b in d.bags)


def orthogonality(d1: Decomposition, d2: Decomposition) -> int:
    """Largest intersection of a bag of ``d1`` with a bag of ``d2``."""
    if d1.universe != d2.universe:
        raise OrthoError("decompositions cover different vertex sets")
    where: dict[int, list[int]] = {}
    for j, bag in enumerate(d2.bags):
        for v in bag:
            where.setdefault(v, []).append(j)
    best = 0
    for bag in d1.bags:
        counts = Counter(j for v in bag for j in where.get(v, ()))
        if counts:
            best = max(best, max(counts.values()))
    return best


def layered_width(d: Decomposition, layering: Layering) -> int:
    """Largest number of vertices one bag of ``d`` has in a single layer."""
    where = layering.layer_of()
    if not d.universe <= set(where):
        raise OrthoError("layering does not cover the decomposition's vertices")
    best = 0
    for bag in d.bags:
        counts = Counter(where[v] for v in bag)
        if counts:
            best = max(best, max(counts.values()))
    return best


def is_domino(d: Decomposition) -> bool:
    counts = Counter(v for b in d.bags for v in b)
    return all(c <= 2 for c in counts.values())


def restrict(d: TreeDecomposition, keep: Iterable[int]) -> TreeDecomposition:
    s = frozenset(keep)
    return TreeDecomposition(tuple(b & s for b in d.bags), d.tree_edges)


def weak_to_path(p: WeakPathDecomposition) -> PathDecomposition:
    bags = p.bags
    if len(bags) <= 1:
        return PathDecomposition(bags)
    return PathDecomposition(tuple(bags[i] | bags[i + 1] for i in range(len(bags) - 1)))


def bfs_layering(g: Graph, root: int = 0) -> Layering:
    """Distance layers from ``root``.

    Further components follow in order of their least vertex, each rooted at
    that vertex and separated from the previous one by an empty layer.
    """
    if g.n == 0:
        return Layering(())
    if not 0 <= root < g.n:
        raise OrthoError(f"root {root} is not a vertex")
    dist: dict[int, int] = {}
    layers: list[set[int]] = []
    starts = [root] + [v for v in g.vertices if v != root]
    for s in starts:
        if s in dist:
            continue
        if layers:
            layers.append(set())
        base = len(layers)
        dist[s] = base
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if dist[u] == len(layers):
                layers.append(set())
            layers[dist[u]].add(u)
            for w in sorted(g.adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
    return Layering(tuple(layers))


def from_elimination_ordering(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition whose node i holds ``order[i]`` plus its later fill-neighbours.

    Node i hangs off the node of its earliest later neighbour; nodes without
    later neighbours (one per component) are chained together.
    """
    if sorted(order) != list(g.vertices):
        raise OrthoError("ordering must list every vertex once")
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(a) for a in g.adj]
    bags, edges, roots = [], [], []
    for i, v in enumerate(order):
        later = {w for w in nbrs[v] if pos[w] > i}
        bags.append(frozenset(later | {v}))
        for w in later:
            nbrs[w] |= later - {w}
        if later:
            edges.append((i, min(pos[w] for w in later)))
        else:
            roots.append(i)
    edges += [(roots[j], roots[j + 1]) for j in range(len(roots) - 1)]
    return TreeDecomposition(tuple(bags), tuple(edges))


_KINDS = {
    "tree": TreeDecomposition,
    "path": PathDecomposition,
    "weakpath": WeakPathDecomposition,
    "layering": Layering,
}


def to_dict(d: Decomposition) -> dict:
    out = {"kind": d.kind, "bags": [sorted(b) for b in d.bags]}
    if isinstance(d, TreeDecomposition):
        out["tree_edges"] = [list(e) for e in d.tree_edges]
    return out


def from_dict(data: dict) -> Decomposition:
    try:
        kind = data["kind"]
        cls = _KINDS[kind]
        bags = data["bags"]
    except (KeyError, TypeError) as exc:
        raise OrthoError(f"malformed decomposition JSON: {exc}") from exc
    if cls is TreeDecomposition:
        edges = data.get("tree_edges")
        if edges is None:
            edges = [(i, i + 1) for i in range(len(bags) - 1)]
        return TreeDecomposition(bags, tuple(tuple(e) for e in edges))
    return cls(bags)


def to_json(d: Decomposition) -> str:
    return json.dumps(to_dict(d), sort_keys=True) + "\n"


def to_dot(d: Decomposition, name: str = "T") -> str:
    lines = [f"graph {name} {{"]
    for i, bag in enumerate(d.bags):
        lines.append(f'  {i} [label="{" ".join(map(str, sorted(bag)))}"];')
    for x, y in d.tree_edges if not isinstance(d, Layering) else ():
        lines.append(f"  {x} -- {y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
