"""Explicit orthogonal decomposition pairs.

Ids follow the generators in :mod:`orthodecomp.graphs`.  Star decompositions
put the root bag at node 0 and the leaves after it in vertex-id order.
"""

from __future__ import annotations

from typing import Iterable

from .decomp import (
    Layering,
    PathDecomposition,
    TreeDecomposition,
    restrict,
    validate,
    width,
)
from .errors import OrthoError, ValidationError
from .graphs import Graph


def grid_orthogonal_paths(n: int) -> tuple[PathDecomposition, PathDecomposition]:
    """Column-pair and row-pair path decompositions of the n x n grid."""
    if n < 2:
        raise OrthoError("grid pair needs n >= 2")
    cols = PathDecomposition(
        tuple({r * n + c for r in range(n) for c in (j, j + 1)} for j in range(n - 1))
    )
    rows = PathDecomposition(
        tuple({r * n + c for r in (i, i + 1) for c in range(n)} for i in range(n - 1))
    )
    return cols, rows


def knn_orthogonal_paths(n: int) -> tuple[PathDecomposition, PathDecomposition]:
    """P = (V + w_j)_j and Q = (W + v_i)_i for K_{n,n}."""
    if n < 1:
        raise OrthoError("K_{n,n} pair needs n >= 1")
    vs = set(range(n))
    ws = set(range(n, 2 * n))
    p = PathDecomposition(tuple(vs | {n + j} for j in range(n)))
    q = PathDecomposition(tuple(ws | {i} for i in range(n)))
    return p, q


def _star(root: Iterable[int], leaves: list[Iterable[int]]) -> TreeDecomposition:
    bags = [frozenset(root)] + [frozenset(b) for b in leaves]
    return TreeDecomposition(tuple(bags), tuple((0, i) for i in range(1, len(bags))))


def bipartite_star_pair(g: Graph, a: Iterable[int], b: Iterable[int]):
    """Star decompositions rooted at A (leaves N[w], w in B) and at B (leaves N[v], v in A)."""
    a, b = frozenset(a), frozenset(b)
    if a & b or (a | b) != frozenset(g.vertices):
        raise OrthoError("(A, B) must partition the vertex set")
    for u, v in g.edges:
        if (u in a) == (v in a):
            raise OrthoError(f"edge {u}-{v} lies inside one side; not a bipartition")
    s = _star(a, [g.adj[w] | {w} for w in sorted(b)])
    t = _star(b, [g.adj[v] | {v} for v in sorted(a)])
    return s, t


def subdivision_star_pair(n: int) -> tuple[TreeDecomposition, TreeDecomposition]:
    """The two star decompositions of the 1-subdivision of K_{n,n}.

    S has root {v_1..v_n} and leaf V + {w_j, x_{1,j}..x_{n,j}} for each j; T is
    the mirror image.
    """
    if n < 1:
        raise OrthoError("needs n >= 1")
    vs = set(range(n))
    ws = set(range(n, 2 * n))

    def x(i: int, j: int) -> int:
        return 2 * n + i * n + j

    s = _star(vs, [vs | {n + j} | {x(i, j) for i in range(n)} for j in range(n)])
    t = _star(ws, [ws | {i} | {x(i, j) for j in range(n)} for i in range(n)])
    return s, t


def domino_from_layered(
    t: TreeDecomposition, layering: Layering, g: Graph
) -> PathDecomposition:
    """Pairs of consecutive layers, with an empty layer appended at the end."""
    for obj in (t, layering):
        rep = validate(obj, g)
        if not rep:
            raise ValidationError(rep.message, rep)
    layers = list(layering.layers) + [frozenset()]
    return PathDecomposition(tuple(layers[i] | layers[i + 1] for i in range(len(layers) - 1)))


def domino_restricted_widths(t: TreeDecomposition, p: PathDecomposition) -> dict[int, int]:
    """For every vertex v: width of ``t`` restricted to the union of ``p``'s bags holding v."""
    holding: dict[int, set[int]] = {}
    for bag in p.bags:
        for v in bag:
            holding.setdefault(v, set()).update(bag)
    return {v: width(restrict(t, span)) for v, span in sorted(holding.items())}


def vertex_partition_orthogonal(
    g: Graph,
    v1: Iterable[int],
    v2: Iterable[int],
    p1: PathDecomposition,
    p2: PathDecomposition,
) -> tuple[PathDecomposition, PathDecomposition]:
    """Add V2 to every bag of P1 and V1 to every bag of P2."""
    v1, v2 = frozenset(v1), frozenset(v2)
    if v1 & v2 or (v1 | v2) != frozenset(g.vertices):
        raise OrthoError("(V1, V2) must partition the vertex set")
    for part, p in ((v1, p1), (v2, p2)):
        sub, old = g.induced(part)
        back = {v: i for i, v in enumerate(old)}
        if not p.universe <= part:
            raise OrthoError("a part decomposition uses vertices outside its part")
        local = PathDecomposition(tuple({back[v] for v in bag} for bag in p.bags))
        rep = validate(local, sub) if sub.n else None
        if rep is not None and not rep:
            raise ValidationError(f"part decomposition invalid: {rep.message}", rep)
    bags1 = p1.bags or (frozenset(),)
    bags2 = p2.bags or (frozenset(),)
    return (
        PathDecomposition(tuple(b | v2 for b in bags1)),
        PathDecomposition(tuple(b | v1 for b in bags2)),
    )
