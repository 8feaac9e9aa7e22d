"""Shared hypothesis strategies and small fixtures for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from orthodecomp.graphs import Graph
from orthodecomp.rects import Rect


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 9) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


@st.composite
def rects(draw, size: int = 8) -> Rect:
    x1, x2 = sorted(draw(st.lists(st.integers(0, size), min_size=2, max_size=2, unique=True)))
    y1, y2 = sorted(draw(st.lists(st.integers(0, size), min_size=2, max_size=2, unique=True)))
    return Rect(x1, x2, y1, y2)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def small_graph_zoo() -> list[Graph]:
    """Deterministic graphs with at most 12 vertices used by several cross-checks."""
    from orthodecomp import graphs as gr

    rng = random.Random(2024)
    zoo = [
        gr.path_graph(5),
        gr.cycle_graph(7),
        gr.complete_graph(5),
        gr.star_graph(9),
        gr.grid(3, 3),
        gr.grid(3, 4),
        gr.complete_bipartite(3, 3),
        gr.complete_tripartite(2),
        gr.subdivided_knn(2),
        gr.gen_shift_graph(5),
        gr.complete_binary_tree(2),
        gr.add_dominant(gr.cycle_graph(6)),
        gr.disjoint_union(gr.complete_graph(3), gr.complete_graph(3)),
    ]
    zoo += [random_graph(rng, rng.randint(4, 12), rng.choice([0.2, 0.35, 0.5])) for _ in range(12)]
    return zoo


def tree_of(d):
    from orthodecomp.decomp import TreeDecomposition

    return d if isinstance(d, TreeDecomposition) else TreeDecomposition.from_path(d)


def random_orthogonal_pair(rng: random.Random):
    """(graph, first, second) produced by one of the explicit constructions."""
    from orthodecomp import constructions as cons
    from orthodecomp import graphs as gr
    from orthodecomp.decomp import bfs_layering, from_elimination_ordering
    from orthodecomp.planarize import min_fill_ordering

    kind = rng.choice(["grid", "knn", "star", "subdiv", "domino", "layered"])
    if kind == "grid":
        n = rng.randint(2, 7)
        return gr.grid(n, n), *cons.grid_orthogonal_paths(n)
    if kind == "knn":
        n = rng.randint(1, 7)
        return gr.complete_bipartite(n, n), *cons.knn_orthogonal_paths(n)
    if kind == "star":
        a, b = rng.randint(1, 6), rng.randint(1, 6)
        g = Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b) if rng.random() < 0.5])
        return g, *cons.bipartite_star_pair(g, range(a), range(a, a + b))
    if kind == "subdiv":
        n = rng.randint(1, 5)
        return gr.subdivided_knn(n), *cons.subdivision_star_pair(n)
    g = random_graph(rng, rng.randint(2, 12), rng.choice([0.2, 0.3, 0.5]))
    t = from_elimination_ordering(g, min_fill_ordering(g, seed=rng.randint(0, 99)))
    lay = bfs_layering(g, rng.randrange(g.n))
    if kind == "domino":
        return g, t, cons.domino_from_layered(t, lay, g)
    return g, t, lay


def random_compress_instance(rng: random.Random):
    """(graph, tree decomposition, weak path decomposition, k) with k the measured orthogonality."""
    from orthodecomp.decomp import WeakPathDecomposition, orthogonality

    while True:
        g, first, second = random_orthogonal_pair(rng)
        if second.kind != "tree":
            break
    t = tree_of(first)
    p = WeakPathDecomposition(second.bags)
    return g, t, p, max(1, orthogonality(t, p))
