"""Exact brute-force computations for small graphs.

These are the ground truth the rest of the package is checked against, so
they stay deliberately simple: subset dynamic programming and exhaustive
search over bitmasks.  Every function refuses graphs above its cap instead of
approximating.
"""

from __future__ import annotations

from itertools import combinations

from .decomp import PathDecomposition, TreeDecomposition, from_elimination_ordering
from .errors import CapExceeded
from .graphs import Graph

TREEWIDTH_CAP = 14
PATHWIDTH_CAP = 32
CLIQUE_CAP = 40
CHROMATIC_CAP = 16
SEPARATOR_CAP = 16


def _check_cap(g: Graph, cap: int, what: str) -> None:
    if g.n > cap:
        raise CapExceeded(f"{what} oracle is capped at {cap} vertices, graph has {g.n}")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _elimination_degree(adj: tuple[int, ...], before: int, v: int) -> int:
    """|Q(before, v)|: vertices outside before+v reachable from v through ``before``."""
    comp = 1 << v
    frontier = comp
    reach = 0
    while frontier:
        nb = 0
        for u in _bits(frontier):
            nb |= adj[u]
        reach |= nb
        frontier = nb & before & ~comp
        comp |= frontier
    return bin(reach & ~before & ~(1 << v)).count("1")


def exact_treewidth(g: Graph, cap: int = TREEWIDTH_CAP) -> tuple[int, TreeDecomposition]:
    """Treewidth by DP over vertex subsets (elimination-ordering formulation)."""
    _check_cap(g, cap, "treewidth")
    n = g.n
    if n == 0:
        return -1, TreeDecomposition((frozenset(),), ())
    adj = g.adj_masks
    full = (1 << n) - 1
    best = [0] * (1 << n)
    choice = [0] * (1 << n)
    best[0] = -1
    for s in range(1, full + 1):
        value, pick = n, -1
        for v in _bits(s):
            rest = s & ~(1 << v)
            cost = best[rest]
            if cost >= value:
                continue
            q = _elimination_degree(adj, rest, v)
            if q > cost:
                cost = q
            if cost < value:
                value, pick = cost, v
        best[s], choice[s] = value, pick
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    td = from_elimination_ordering(g, order)
    return best[full], td


def exact_pathwidth(g: Graph, cap: int = PATHWIDTH_CAP) -> tuple[int, PathDecomposition]:
    """Pathwidth as vertex separation number.

    For w = 0, 1, ... search the vertex orderings whose every prefix has at
    most w members with a neighbour outside the prefix; prefixes are
    memoized as bitmasks, so each subset is expanded at most once per w.
    """
    _check_cap(g, cap, "pathwidth")
    n = g.n
    if n == 0:
        return -1, PathDecomposition((frozenset(),))
    adj = g.adj_masks
    full = (1 << n) - 1

    def boundary(s: int) -> int:
        return sum(1 for u in _bits(s) if adj[u] & ~s)

    for w in range(n):
        parent: dict[int, tuple[int, int] | None] = {0: None}
        stack = [0]
        while stack:
            s = stack.pop()
            if s == full:
                return w, _path_from_prefixes(adj, parent)
            rest = full & ~s
            # a vertex with no neighbour outside s + v can always go next
            free = next((v for v in _bits(rest) if not adj[v] & rest & ~(1 << v)), None)
            moves = [free] if free is not None else list(_bits(rest))
            for v in moves:
                t = s | (1 << v)
                if t not in parent and boundary(t) <= w:
                    parent[t] = (s, v)
                    stack.append(t)
    raise AssertionError("some ordering always has separation below n")


def _path_from_prefixes(adj, parent) -> PathDecomposition:
    order = []
    s = max(parent)
    while parent[s] is not None:
        s, v = parent[s]
        order.append(v)
    order.reverse()
    bags = []
    placed = 0
    for v in order:
        active = {u for u in _bits(placed) if adj[u] & ~placed}
        bags.append(frozenset(active | {v}))
        placed |= 1 << v
    return PathDecomposition(tuple(bags))


def max_clique(g: Graph, cap: int = CLIQUE_CAP) -> tuple[int, list[int]]:
    """Maximum clique by Bron-Kerbosch with pivoting and a size bound."""
    _check_cap(g, cap, "clique")
    adj = g.adj_masks
    best: list[int] = []

    def expand(r: list[int], p: int, x: int) -> None:
        nonlocal best
        if not p and not x:
            if len(r) > len(best):
                best = list(r)
            return
        if len(r) + bin(p).count("1") <= len(best):
            return
        pivot = max(_bits(p | x), key=lambda u: bin(p & adj[u]).count("1"))
        for v in list(_bits(p & ~adj[pivot])):
            r.append(v)
            expand(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    expand([], (1 << g.n) - 1, 0)
    return len(best), sorted(best)


def chromatic_number(g: Graph, cap: int = CHROMATIC_CAP) -> tuple[int, list[int]]:
    """Exact chromatic number with a witness colouring (colours 0..k-1)."""
    _check_cap(g, cap, "chromatic")
    if g.n == 0:
        return 0, []
    order = sorted(g.vertices, key=lambda v: -g.degree(v))
    colour = [-1] * g.n

    def place(i: int, k: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {colour[w] for w in g.adj[v]}
        # new colours are symmetric: try at most one unused colour beyond the max so far
        top = max(colour) + 1
        for c in range(min(k, top + 1)):
            if c not in used:
                colour[v] = c
                if place(i + 1, k):
                    return True
                colour[v] = -1
        return False

    k = 1
    while not place(0, k):
        k += 1
    return k, colour


def is_separator(g: Graph, s) -> bool:
    """Every component of G - S has at most |V(G)|/2 vertices."""
    return all(2 * len(c) <= g.n for c in g.components(s))


def min_separator_size(g: Graph, cap: int = SEPARATOR_CAP) -> tuple[int, list[int]]:
    """Smallest S with all components of G - S of size <= n/2, by enumeration."""
    _check_cap(g, cap, "separator")
    for size in range(g.n + 1):
        for s in combinations(range(g.n), size):
            if is_separator(g, s):
                return size, list(s)
    raise AssertionError("V(G) itself is always a separator")
