"""Certificates extracted from orthogonal pairs.

* :func:`compress` turns a tree decomposition plus a k-orthogonal weak path
  decomposition of magnitude s into a tree decomposition of width at most
  2*sqrt(k*s) - 1.
* :func:`edge_bound_check` tests |E(G)| <= (k-1) * magnitude(S).
* :func:`separator_from_decomposition` walks the tree to a balanced bag.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .decomp import (
    Decomposition,
    TreeDecomposition,
    WeakPathDecomposition,
    magnitude,
    orthogonality,
    validate,
    width,
)
from .errors import OrthoError, ValidationError
from .graphs import Graph


def _require(d: Decomposition, g: Graph, what: str) -> None:
    rep = validate(d, g)
    if not rep:
        raise ValidationError(f"{what}: {rep.message}", rep)


def ceil_sqrt_ratio(s: int, k: int) -> int:
    """Smallest t >= 0 with t*t*k >= s, i.e. ceil(sqrt(s/k))."""
    t = math.isqrt(s // k) if k else 0
    while t * t * k < s:
        t += 1
    while t > 0 and (t - 1) * (t - 1) * k >= s:
        t -= 1
    return t


@dataclass(frozen=True)
class CompressResult:
    decomposition: TreeDecomposition
    k: int
    s: int
    t: int
    label: int
    deleted: frozenset[int]
    components: int

    @property
    def width(self) -> int:
        return width(self.decomposition)

    def within_bound(self) -> bool:
        """(width + 1)^2 <= 4ks, compared in integers."""
        return (self.width + 1) ** 2 <= 4 * self.k * self.s

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "s": self.s,
            "t": self.t,
            "label": self.label,
            "deleted": sorted(self.deleted),
            "components": self.components,
            "width": self.width,
            "bound_squared": 4 * self.k * self.s,
            "within_bound": self.within_bound(),
        }


def compress(
    g: Graph, t: TreeDecomposition, p: WeakPathDecomposition, k: int
) -> CompressResult:
    """Width compression of a k-orthogonal (tree, weak path) pair.

    Bags of ``p`` are labelled 1..t cyclically with t = ceil(sqrt(s/k)); the
    lightest label class (smallest label on ties) is deleted, ``t`` is
    restricted to each component of what remains, the copies are hung off the
    first copy's first node, and the deleted vertices go into every bag.
    """
    _require(t, g, "tree decomposition")
    _require(p, g, "weak path decomposition")
    if k < 1:
        raise OrthoError("k must be positive")
    if g.n and orthogonality(t, p) > k:
        raise OrthoError(f"pair is {orthogonality(t, p)}-orthogonal, more than k={k}")
    s = magnitude(p)
    steps = max(1, ceil_sqrt_ratio(s, k))
    totals = [0] * steps
    for idx, bag in enumerate(p.bags):
        totals[idx % steps] += len(bag)
    label = min(range(steps), key=lambda i: (totals[i], i))
    deleted = frozenset().union(*(b for idx, b in enumerate(p.bags) if idx % steps == label))

    comps = g.components(deleted)
    if not comps:
        return CompressResult(
            TreeDecomposition((deleted,), ()), k, s, steps, label + 1, deleted, 0
        )

    nb = t.neighbours()
    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    anchor = None
    for comp in comps:
        cset = frozenset(comp)
        # nodes meeting a connected vertex set span a subtree of t
        nodes = [x for x, bag in enumerate(t.bags) if bag & cset]
        local = {x: len(bags) + i for i, x in enumerate(nodes)}
        bags.extend((t.bags[x] & cset) | deleted for x in nodes)
        for x in nodes:
            for y in nb[x]:
                if y in local and x < y:
                    edges.append((local[x], local[y]))
        first = local[nodes[0]]
        if anchor is None:
            anchor = first
        else:
            edges.append((anchor, first))
    out = TreeDecomposition(tuple(bags), tuple(edges))
    return CompressResult(out, k, s, steps, label + 1, deleted, len(comps))


@dataclass(frozen=True)
class EdgeBoundReport:
    edges: int
    k: int
    s: int
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", self.edges <= (self.k - 1) * self.s)

    @property
    def bound(self) -> int:
        return (self.k - 1) * self.s

    def to_dict(self) -> dict:
        return {"edges": self.edges, "k": self.k, "s": self.s, "bound": self.bound, "passed": self.passed}


def edge_bound_check(
    g: Graph, s: TreeDecomposition, t: TreeDecomposition, k: int | None = None
) -> EdgeBoundReport:
    """|E(G)| against (k-1) * magnitude(S); ``k`` defaults to the measured orthogonality."""
    _require(s, g, "first decomposition")
    _require(t, g, "second decomposition")
    measured = orthogonality(s, t)
    if k is None:
        k = measured
    elif measured > k:
        raise OrthoError(f"pair is {measured}-orthogonal, more than k={k}")
    return EdgeBoundReport(g.m, k, magnitude(s))


def separator_from_decomposition(g: Graph, t: TreeDecomposition) -> frozenset[int]:
    """A bag B of ``t`` such that every component of G - B has at most n/2 vertices."""
    _require(t, g, "tree decomposition")
    nb = t.neighbours()
    holder = {}
    for x, bag in enumerate(t.bags):
        for v in bag:
            holder.setdefault(v, x)
    x, came_from = 0, None
    for _ in range(len(t.bags)):
        bag = t.bags[x]
        big = [c for c in g.components(bag) if 2 * len(c) > g.n]
        if not big:
            return bag
        # the oversized component avoids this bag, so it lives beyond exactly one neighbour
        target = holder[big[0][0]]
        parent = {x: None}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in nb[u]:
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
        step = target
        while parent[step] != x:
            step = parent[step]
        if step == came_from:
            raise AssertionError("separator walk turned back; decomposition is inconsistent")
        came_from, x = x, step
    raise AssertionError("separator walk did not terminate")


def _sqrt_bound(coef: int, inside: int) -> dict:
    """coef*sqrt(inside) - 1 as a float and as an exact floor."""
    return {
        "value": coef * math.sqrt(inside) - 1,
        "floor": math.isqrt(coef * coef * inside) - 1,
    }


def bounds_report(
    k: int | None = None,
    s: int | None = None,
    n: int | None = None,
    g: int | None = None,
    m: int | None = None,
    tw: int | None = None,
    c: int | None = None,
) -> dict:
    """Evaluate every bound whose parameters are supplied."""
    from .planarize import crossing_lower_bound

    for name, val in dict(k=k, s=s, n=n, g=g, m=m, tw=tw, c=c).items():
        if val is not None and val < 0:
            raise OrthoError(f"{name} must be nonnegative")
    out: dict[str, dict] = {}
    if k is not None and s is not None:
        out["tw_from_weak_path"] = _sqrt_bound(2, k * s)
    if k is not None and n is not None:
        out["tw_from_layered"] = _sqrt_bound(2, k * n)
        if c is not None:
            out["pw_from_weak_path"] = _sqrt_bound(11, c * k * n)
    if g is not None and m is not None and n is not None:
        out["tw_from_drawing"] = _sqrt_bound(2, (4 * g + 6) * (2 * m + n))
    if g is not None and m is not None:
        out["tw_of_string_graph"] = _sqrt_bound(4, (2 * g + 3) * m)
    if tw is not None and n is not None:
        lb = crossing_lower_bound(tw, n)
        out["crossing_lower_bound"] = {"value": str(lb), "floor": math.floor(lb)}
    return out

