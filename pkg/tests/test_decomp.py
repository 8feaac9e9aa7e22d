from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import graphs
from orthodecomp import decomp as dc
from orthodecomp import graphs as gr
from orthodecomp.constructions import grid_orthogonal_paths, knn_orthogonal_paths
from orthodecomp.decomp import (
    Layering,
    PathDecomposition,
    TreeDecomposition,
    WeakPathDecomposition,
    validate,
)
from orthodecomp.errors import OrthoError
from orthodecomp.planarize import min_fill_ordering

A, B, C, D = 0, 1, 2, 3


def test_single_bag_on_k4():
    assert validate(TreeDecomposition.from_path([{0, 1, 2, 3}]), gr.complete_graph(4))


def test_uncovered_edge_reported():
    rep = validate(PathDecomposition([{A, B}, {C}]), gr.path_graph(3))
    assert not rep
    assert (rep.axiom, rep.witness) == ("edge", (B, C))


def test_disconnected_support_reported():
    rep = validate(PathDecomposition([{A}, {B}, {A}]), gr.Graph.from_edges(2, []))
    assert (rep.axiom, rep.witness) == ("connectivity", (A,))


def test_coverage_reported_first():
    rep = validate(PathDecomposition([{A}]), gr.path_graph(2))
    assert (rep.axiom, rep.witness) == ("coverage", (B,))


def test_tree_shape_checked():
    g = gr.path_graph(2)
    assert validate(TreeDecomposition([{0, 1}, {1}], ()), g).axiom == "tree"
    assert validate(TreeDecomposition([{0, 1}, {1}, {0}], ((0, 1), (1, 0))), g).axiom == "tree"


def test_tree_connectivity_uses_tree_edges():
    g = gr.Graph.from_edges(2, [])
    t = TreeDecomposition([{0}, {1}, {0}], ((0, 1), (1, 2)))
    assert validate(t, g).axiom == "connectivity"
    t2 = TreeDecomposition([{0}, {1}, {0}], ((0, 2), (1, 2)))
    assert validate(t2, g)


def test_weak_path_accepts_straddling_edge():
    g = gr.path_graph(3)
    weak = WeakPathDecomposition([{A}, {B}, {C}])
    assert validate(weak, g)
    assert not validate(PathDecomposition([{A}, {B}, {C}]), g)


def test_weak_path_edge_in_earlier_window():
    # edge 1-2 with 2 in the first bag and 1 in the second only
    g = gr.Graph.from_edges(3, [(1, 2)])
    assert validate(WeakPathDecomposition([{0, 2}, {1}]), g)


def test_weak_path_rejects_far_edge():
    g = gr.path_graph(2)
    rep = validate(WeakPathDecomposition([{A}, set(), {B}]), g)
    assert rep.axiom == "edge"


def test_layering_axioms():
    g = gr.path_graph(3)
    assert validate(Layering([{0}, {1}, {2}]), g)
    assert validate(Layering([{0}, {2}, {1}]), g).axiom == "edge_span"
    assert validate(Layering([{0, 1}, {1, 2}]), g).axiom == "partition"
    assert validate(Layering([{0, 1}]), g).axiom == "coverage"


def test_empty_bags_allowed():
    g = gr.path_graph(2)
    assert validate(PathDecomposition([set(), {0, 1}, set()]), g)


def test_range_checked():
    assert validate(PathDecomposition([{0, 5}]), gr.path_graph(2)).axiom == "range"


def test_width_examples():
    assert dc.width(PathDecomposition([{0, 1, 2, 3, 4}])) == 4
    cols, _ = grid_orthogonal_paths(3)
    assert dc.width(cols) == 5
    assert dc.width(PathDecomposition([{0}, {1}, {2}])) == 0


def test_magnitude_examples():
    p, _ = knn_orthogonal_paths(3)
    assert dc.magnitude(p) == 12
    assert dc.magnitude(dc.bfs_layering(gr.grid(3, 3))) == 9
    assert dc.magnitude(PathDecomposition([{A, B}, {B, C}])) == 4


def test_orthogonality_examples():
    cols, rows = grid_orthogonal_paths(3)
    assert dc.orthogonality(cols, rows) == 4
    p, q = knn_orthogonal_paths(3)
    assert dc.orthogonality(p, q) == 2
    single = PathDecomposition([{0, 1, 2}])
    assert dc.orthogonality(single, single) == 3


def test_orthogonality_rejects_different_universes():
    with pytest.raises(OrthoError):
        dc.orthogonality(PathDecomposition([{0}]), PathDecomposition([{1}]))


def test_layered_width_examples():
    t = TreeDecomposition.from_path([{0, 1, 2}, {2, 3}])
    assert dc.layered_width(t, Layering([{0, 1, 2, 3}])) == 3
    assert dc.layered_width(PathDecomposition([{0}, {1}]), Layering([{0}, {1}])) == 1
    cols, _ = grid_orthogonal_paths(3)
    rows = Layering([{0, 1, 2}, {3, 4, 5}, {6, 7, 8}])
    assert dc.layered_width(cols, rows) == 2


def test_is_domino_examples():
    g = gr.path_graph(4)
    lay = dc.bfs_layering(g)
    layers = list(lay.layers) + [frozenset()]
    p = PathDecomposition([layers[i] | layers[i + 1] for i in range(len(layers) - 1)])
    assert dc.is_domino(p)
    assert not dc.is_domino(PathDecomposition([{A}, {A}, {A}]))
    assert dc.is_domino(PathDecomposition([{0}, {1}, {2}]))


def test_restrict_examples():
    t = TreeDecomposition.from_path([{0, 1}, {1, 2}])
    assert all(not b for b in dc.restrict(t, set()).bags)
    assert dc.restrict(t, {0, 1, 2}) == t
    single = TreeDecomposition.from_path([{A, B, C}])
    assert dc.restrict(single, {A, C}).bags == (frozenset({A, C}),)


def test_weak_to_path_examples():
    out = dc.weak_to_path(WeakPathDecomposition([{A}, {B}, {C}]))
    assert out.bags == (frozenset({A, B}), frozenset({B, C}))
    genuine = WeakPathDecomposition([{0, 1}, {1, 2}])
    assert validate(dc.weak_to_path(genuine), gr.path_graph(3))
    one = WeakPathDecomposition([{0, 1}])
    assert dc.weak_to_path(one).bags == one.bags


def test_bfs_layering_examples():
    star = dc.bfs_layering(gr.star_graph(3), 0)
    assert star.layers == (frozenset({0}), frozenset({1, 2, 3}))
    assert [len(x) for x in dc.bfs_layering(gr.path_graph(4), 0).layers] == [1, 1, 1, 1]
    assert [len(x) for x in dc.bfs_layering(gr.grid(3, 3), 0).layers] == [1, 2, 3, 2, 1]


def test_bfs_layering_disconnected_gets_empty_separator():
    g = gr.disjoint_union(gr.path_graph(2), gr.path_graph(2))
    lay = dc.bfs_layering(g, 0)
    assert lay.layers == (frozenset({0}), frozenset({1}), frozenset(), frozenset({2}), frozenset({3}))
    assert validate(lay, g)


def test_elimination_ordering_decomposition():
    g = gr.cycle_graph(5)
    t = dc.from_elimination_ordering(g, list(range(5)))
    assert validate(t, g)
    assert dc.width(t) == 2
    with pytest.raises(OrthoError):
        dc.from_elimination_ordering(g, [0, 1])


def test_json_round_trip_all_kinds():
    objs = [
        TreeDecomposition([{0, 1}, {1, 2}], ((0, 1),)),
        PathDecomposition([{0}, {0, 1}]),
        WeakPathDecomposition([{0}, {1}]),
        Layering([{0}, set(), {1}]),
    ]
    for d in objs:
        back = dc.from_dict(dc.to_dict(d))
        assert back == d and back.kind == d.kind
        assert dc.to_json(d).endswith("\n")
    with pytest.raises(OrthoError):
        dc.from_dict({"kind": "banana", "bags": []})


def test_to_dot_mentions_bags():
    dot = dc.to_dot(TreeDecomposition([{0, 1}, {1, 2}], ((0, 1),)))
    assert '"0 1"' in dot and "0 -- 1;" in dot


@st.composite
def weak_paths(draw):
    """A random graph together with a random valid weak path decomposition of it."""
    n = draw(st.integers(1, 8))
    t = draw(st.integers(1, 6))
    spans = []
    for _ in range(n):
        lo = draw(st.integers(0, t - 1))
        hi = draw(st.integers(lo, t - 1))
        spans.append((lo, hi))
    bags = [frozenset(v for v, (lo, hi) in enumerate(spans) if lo <= i <= hi) for i in range(t)]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            (a, b), (c, d) = spans[u], spans[v]
            if max(a, c) <= min(b, d) + 1 and draw(st.booleans()):
                edges.append((u, v))
    return gr.Graph.from_edges(n, edges), WeakPathDecomposition(tuple(bags))


@given(weak_paths())
def test_weak_to_path_preserves_validity(pair):
    g, weak = pair
    assert validate(weak, g)
    assert validate(dc.weak_to_path(weak), g)


@given(graphs())
def test_magnitude_at_least_n_with_equality_iff_partition(g):
    t = dc.from_elimination_ordering(g, min_fill_ordering(g))
    assert validate(t, g)
    counts = [sum(v in b for b in t.bags) for v in g.vertices]
    assert dc.magnitude(t) >= g.n
    assert (dc.magnitude(t) == g.n) == all(c == 1 for c in counts)


@given(graphs(), st.randoms(use_true_random=False))
def test_orthogonality_symmetric(g, rng):
    t = dc.from_elimination_ordering(g, min_fill_ordering(g, seed=rng.randint(0, 99)))
    lay = dc.bfs_layering(g, rng.randrange(g.n))
    assert dc.orthogonality(t, lay) == dc.orthogonality(lay, t)


@given(graphs())
def test_layered_width_of_trivial_layering_is_width_plus_one(g):
    t = dc.from_elimination_ordering(g, min_fill_ordering(g))
    assert dc.layered_width(t, Layering([frozenset(g.vertices)])) == dc.width(t) + 1


@given(graphs(), st.integers(0, 10))
def test_bfs_layering_always_valid(g, root):
    lay = dc.bfs_layering(g, root % g.n)
    assert validate(lay, g)


def test_random_elimination_orderings_validate():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 10)
        g = gr.Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        order = list(range(n))
        rng.shuffle(order)
        assert validate(dc.from_elimination_ordering(g, order), g)
