"""Open axis-aligned rectangles and boxes with exact rational coordinates.

Covers intersection and Helly points, h/v/o pair classification,
hvo-alternating sequences, nesting witnesses, the clique-hunting walk down a
universal 2-tree (:func:`find_clique`), its d-box analogue
(:func:`box_find_clique`), and the translation between rectangle families and
pairs of path decompositions.

No predicate uses floating point: touching boundaries never intersect.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .decomp import PathDecomposition
from .errors import (
    CornerContained,
    EmptyIntersection,
    Exhausted,
    NotNesting,
    OracleViolation,
    OrthoError,
)
from .graphs import Graph

Point = tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Parse an int, Fraction, decimal/fraction string, or a [num, den] pair."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise OrthoError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as exc:
            raise OrthoError(f"bad coordinate {value!r}") from exc
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    raise OrthoError(f"coordinates must be exact; got {value!r}")


def fmt(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class Box:
    """Open box: the product of the intervals (lo[i], hi[i])."""

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]

    def __post_init__(self):
        lo = tuple(to_fraction(v) for v in self.lo)
        hi = tuple(to_fraction(v) for v in self.hi)
        if len(lo) != len(hi) or not lo:
            raise OrthoError("box needs matching nonempty bound tuples")
        if any(a >= b for a, b in zip(lo, hi)):
            raise OrthoError(f"box bounds must satisfy lo < hi, got {lo} / {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def contains(self, p: Sequence[Fraction]) -> bool:
        return all(a < x < b for a, x, b in zip(self.lo, p, self.hi))

    def center(self) -> Point:
        return tuple((a + b) / 2 for a, b in zip(self.lo, self.hi))

    def to_list(self) -> list[str]:
        return [fmt(v) for v in self.lo + self.hi]


@dataclass(frozen=True)
class Rect:
    """Open rectangle (x1, x2) x (y1, y2)."""

    x1: Fraction
    x2: Fraction
    y1: Fraction
    y2: Fraction

    def __post_init__(self):
        for name in ("x1", "x2", "y1", "y2"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise OrthoError(f"degenerate rectangle ({self.x1},{self.x2})x({self.y1},{self.y2})")

    @classmethod
    def from_corners(cls, x1, y1, x2, y2) -> Rect:
        return cls(x1, x2, y1, y2)

    def corners(self) -> tuple[Point, Point, Point, Point]:
        return (
            (self.x1, self.y1),
            (self.x1, self.y2),
            (self.x2, self.y1),
            (self.x2, self.y2),
        )

    def contains(self, p: Sequence[Fraction]) -> bool:
        return self.x1 < p[0] < self.x2 and self.y1 < p[1] < self.y2

    def center(self) -> Point:
        return ((self.x1 + self.x2) / 2, (self.y1 + self.y2) / 2)

    def transpose(self) -> Rect:
        return Rect(self.y1, self.y2, self.x1, self.x2)

    def as_box(self) -> Box:
        return Box((self.x1, self.y1), (self.x2, self.y2))

    def to_list(self) -> list[str]:
        """JSON order: x1, y1, x2, y2."""
        return [fmt(self.x1), fmt(self.y1), fmt(self.x2), fmt(self.y2)]

    @classmethod
    def from_list(cls, coords: Sequence) -> Rect:
        if len(coords) != 4:
            raise OrthoError("a rectangle is [x1, y1, x2, y2]")
        x1, y1, x2, y2 = coords
        return cls(x1, x2, y1, y2)


def intersect(u: Rect, v: Rect) -> Rect | None:
    x1, x2 = max(u.x1, v.x1), min(u.x2, v.x2)
    y1, y2 = max(u.y1, v.y1), min(u.y2, v.y2)
    if x1 < x2 and y1 < y2:
        return Rect(x1, x2, y1, y2)
    return None


def common(rects: Iterable[Rect]) -> Rect | None:
    it = iter(rects)
    try:
        acc = next(it)
    except StopIteration:
        return None
    for r in it:
        acc = intersect(acc, r)
        if acc is None:
            return None
    return acc


@dataclass(frozen=True)
class HellyResult:
    point: Point | None
    witness: tuple[int, int] | None = None


def helly_point(rects: Sequence[Rect]) -> HellyResult:
    """Centre of the common intersection when the family pairwise intersects."""
    for i, j in combinations(range(len(rects)), 2):
        if intersect(rects[i], rects[j]) is None:
            return HellyResult(None, (i, j))
    box = common(rects)
    if box is None:
        if rects:
            raise AssertionError("pairwise intersecting rectangles with empty intersection")
        return HellyResult(None, None)
    return HellyResult(box.center())


def contains_corner(w: Rect, v: Rect) -> bool:
    """Whether the open rectangle ``w`` contains a corner of ``v``."""
    return any(w.contains(c) for c in v.corners())


H, V, O = "H", "V", "O"


def classify_pair(v: Rect, w: Rect) -> str:
    """Type of the pair (v, w): H, V or O.

    (v, w) is H when w crosses a vertical side of v (so a vertical side of
    v & w lies on v's boundary), V when it crosses a horizontal side, and O
    when w stays inside v.  A side of w that merely coincides with a side of
    v counts as staying inside, which keeps the three cases disjoint.
    """
    if intersect(v, w) is None:
        raise EmptyIntersection("pair does not intersect")
    if contains_corner(w, v):
        raise CornerContained("second rectangle contains a corner of the first")
    horiz = w.x1 < v.x1 or w.x2 > v.x2
    vert = w.y1 < v.y1 or w.y2 > v.y2
    if horiz and vert:
        raise AssertionError("crossing both axes without covering a corner")
    return H if horiz else V if vert else O


@dataclass(frozen=True)
class HvoCheck:
    ok: bool
    index: int | None = None
    condition: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def running_intersections(seq: Sequence[Rect]) -> list[Rect | None]:
    out: list[Rect | None] = []
    acc: Rect | None = None
    for i, r in enumerate(seq):
        acc = r if i == 0 else (None if acc is None else intersect(acc, r))
        out.append(acc)
    return out


def is_hvo_alternating(seq: Sequence[Rect]) -> HvoCheck:
    """Check the three alternation conditions; ``index`` is 0-based into ``seq``."""
    if not seq:
        raise OrthoError("sequence must be nonempty")
    run = seq[0]
    prev_type = None
    for i in range(1, len(seq)):
        v = seq[i]
        nxt = intersect(run, v)
        if nxt is None:
            return HvoCheck(False, i, 1)
        if contains_corner(v, run):
            return HvoCheck(False, i, 2)
        kind = classify_pair(run, v)
        if prev_type is not None and kind == prev_type and kind != O:
            return HvoCheck(False, i, 3)
        prev_type, run = kind, nxt
    return HvoCheck(True)


def _nesting_orientation(seq: Sequence[Rect], r: Rect) -> str | None:
    for kind in (H, V):
        try:
            ok = all(classify_pair(r, v) == kind for v in seq)
            for i in range(1, len(seq)):
                inner = intersect(r, seq[i - 1])
                if not ok or inner is None or classify_pair(inner, seq[i]) != kind:
                    ok = False
                    break
        except (EmptyIntersection, CornerContained):
            ok = False
        if ok:
            return kind
    return None


def nesting_witness(seq: Sequence[Rect], r: Rect) -> tuple[Point, list[int]]:
    """Point of ``r`` covered by at least ceil(k/2) members of a nesting sequence.

    Returns the centre of the common part of ``r`` and the members crossing
    the better-populated side of ``r``, with every index whose rectangle
    contains that point.
    """
    if not seq:
        raise NotNesting("empty sequence")
    kind = _nesting_orientation(seq, r)
    if kind is None:
        raise NotNesting("sequence is neither h-nesting nor v-nesting")
    flip = kind == V
    rr = r.transpose() if flip else r
    ss = [v.transpose() for v in seq] if flip else list(seq)
    left = [i for i, v in enumerate(ss) if v.x1 < rr.x1]
    right = [i for i, v in enumerate(ss) if v.x2 > rr.x2]
    side = left if len(left) >= len(right) else right
    box = common([rr] + [ss[i] for i in side])
    if box is None:
        raise AssertionError("nesting members on one side share no point of R")
    cx, cy = box.center()
    point = (cy, cx) if flip else (cx, cy)
    hits = [i for i, v in enumerate(seq) if v.contains(point)]
    if 2 * len(hits) < len(seq):
        raise AssertionError("nesting witness covers fewer than half the sequence")
    return point, hits


def max_coverage_point(rects: Sequence[Rect], within: Rect | None = None) -> tuple[Point | None, list[int]]:
    """A point (inside ``within`` if given) lying in as many rectangles as possible.

    Brute force over the cells cut out by all rectangle coordinates.
    """
    xs = sorted({c for r in rects for c in (r.x1, r.x2)} | ({within.x1, within.x2} if within else set()))
    ys = sorted({c for r in rects for c in (r.y1, r.y2)} | ({within.y1, within.y2} if within else set()))
    best: tuple[Point | None, list[int]] = (None, [])
    for a, b in zip(xs, xs[1:]):
        for c, d in zip(ys, ys[1:]):
            p = ((a + b) / 2, (c + d) / 2)
            if within is not None and not within.contains(p):
                continue
            hits = [i for i, r in enumerate(rects) if r.contains(p)]
            if best[0] is None or len(hits) > len(best[1]):
                best = (p, hits)
    return best


@dataclass
class ChildOracle:
    """Lazy supplier of shapes adjacent to every parent.

    ``callback(parents, count)`` returns candidate children; every child is
    checked on receipt to intersect each parent.
    """

    callback: Callable[[Sequence, int], list]
    mode: str = "custom"
    requests: int = 0

    def request(self, parents: Sequence, count: int) -> list:
        self.requests += 1
        kids = list(self.callback(parents, count))
        for kid in kids:
            for p in parents:
                if not _shapes_meet(kid, p):
                    raise OracleViolation(f"{self.mode} oracle returned a child missing a parent")
        return kids


def _shapes_meet(a, b) -> bool:
    if isinstance(a, Rect) and isinstance(b, Rect):
        return intersect(a, b) is not None
    return intersect_boxes(_as_box(a), _as_box(b)) is not None


def _as_box(s) -> Box:
    return s.as_box() if isinstance(s, Rect) else s


@dataclass
class CliqueResult:
    shapes: list
    point: Point
    trace: list[dict] = field(default_factory=list)
    levels: int = 0
    outcome: str = "success"

    def to_dict(self) -> dict:
        return {
            "shapes": [s.to_list() for s in self.shapes],
            "point": [fmt(c) for c in self.point],
            "levels": self.levels,
            "outcome": self.outcome,
            "trace": self.trace,
        }


def verify_clique(shapes: Sequence, point: Sequence[Fraction]) -> bool:
    """All shapes pairwise intersect and all contain ``point`` strictly."""
    if not all(s.contains(point) for s in shapes):
        return False
    return all(_shapes_meet(a, b) for a, b in combinations(shapes, 2))


def clique_budget(k: int) -> int:
    """Oracle levels the walk may consume: sum over i=2..k of 2(k-i)+1 = (k-1)^2."""
    return (k - 1) ** 2


def find_clique(root: tuple[Rect, Rect], oracle: ChildOracle, k: int, check: bool = True) -> CliqueResult:
    """Grow an hvo-alternating path down a universal 2-tree until k rectangles share a point.

    Each request asks the oracle for ``4k - 7`` children of the current last
    edge (v_{i-1}, v_i).  If every child covers a corner of R_i, the busiest
    corner gives k-1 children meeting inside R_i.  Otherwise a corner-free
    child extends the sequence when alternation allows, or else replaces v_i;
    after 2(k-i) replacements of v_i the replaced values form a nesting
    sequence whose witness point completes the clique.
    """
    if k < 2:
        raise OrthoError("k must be at least 2")
    r0, r1 = root
    base = intersect(r0, r1)
    if base is None:
        raise EmptyIntersection("root rectangles do not intersect")
    if k == 2:
        res = CliqueResult([r0, r1], base.center(), [{"level": 0, "event": "trivial"}], 0, "trivial")
        return _finish(res, k, check)

    need = 4 * k - 7
    budget = clique_budget(k)
    seq: list[Rect] = [r0]
    runs: list[Rect] = [r0]
    types: list[str] = []
    history: dict[int, list[Rect]] = {1: [r0]}
    trace: list[dict] = []
    level = 0
    while True:
        i = len(seq)
        parent = seq[-2] if i >= 2 else r1
        if level >= budget:
            raise AssertionError(f"walk used all {budget} levels without a clique")
        kids = oracle.request((parent, seq[-1]), need)
        level += 1
        if len(kids) < need:
            raise Exhausted(f"oracle gave {len(kids)} children, {need} needed")
        ri = runs[-1]
        if check and any(intersect(c, ri) is None for c in kids):
            raise AssertionError("a child misses R_i although it meets both parents")
        free = [c for c in kids if not contains_corner(c, ri)]
        if not free:
            return _finish(_corner_case(seq, ri, kids, k, trace, level), k, check)

        last = types[-1] if types else None
        fresh = [c for c in free if last in (None, O) or classify_pair(ri, c) != last]
        if fresh:
            v = fresh[0]
            types.append(classify_pair(ri, v))
            seq.append(v)
            runs.append(intersect(ri, v))
            history[len(seq)] = [v]
            trace.append({"level": level, "event": "success", "index": len(seq), "pair": types[-1]})
            _check_running(seq, runs, check)
            if len(seq) == k:
                res = CliqueResult(list(seq), runs[-1].center(), trace, level, "success")
                return _finish(res, k, check)
            continue

        # every corner-free child would repeat the last pair type: replace v_i
        outer = runs[-2]
        keep = [c for c in free if classify_pair(outer, c) == last]
        v = (keep or free)[0]
        seq[-1] = v
        types[-1] = classify_pair(outer, v)
        runs[-1] = intersect(outer, v)
        history[i].append(v)
        trace.append({"level": level, "event": "stall", "index": i, "pair": types[-1]})
        if check and not is_hvo_alternating(seq):
            raise AssertionError("replacement broke hvo-alternation")
        _check_running(seq, runs, check)
        if len(history[i]) >= 2 * (k - i) + 1:
            res = _nesting_case(seq, runs, history[i], k, trace, level)
            if res is not None:
                return _finish(res, k, check)


def _check_running(seq: list[Rect], runs: list[Rect], check: bool) -> None:
    # the running intersection is determined by the last two members
    if check and len(seq) >= 2 and intersect(seq[-2], seq[-1]) != runs[-1]:
        raise AssertionError("running intersection differs from v_{i-1} & v_i")


def _corner_case(seq, ri: Rect, kids: list[Rect], k: int, trace: list, level: int) -> CliqueResult:
    corners = sorted(ri.corners())
    counts = [sum(1 for c in kids if c.contains(p)) for p in corners]
    best = max(range(4), key=lambda j: (counts[j], -j))
    chosen = [c for c in kids if c.contains(corners[best])][: k - 1]
    box = common(chosen + [ri])
    shapes = (list(seq) + chosen)[-k:]
    trace.append({"level": level, "event": "corner", "index": len(seq), "covered": counts[best]})
    return CliqueResult(shapes, box.center(), trace, level, "corner")


def _nesting_case(seq, runs, values: list[Rect], k: int, trace: list, level: int) -> CliqueResult | None:
    i = len(seq)
    outer = runs[-2]
    want = k - i + 1
    try:
        point, hits = nesting_witness(values, outer)
        how = "nesting"
    except NotNesting:
        point, hits = max_coverage_point(values, outer)
        how = "sweep"
    if point is None or len(hits) < want:
        trace.append({"level": level, "event": "nesting-short", "index": i, "covered": len(hits)})
        return None
    members = [values[j] for j in hits][:want]
    trace.append({"level": level, "event": how, "index": i, "covered": len(hits)})
    return CliqueResult(list(seq[: i - 1]) + members, point, trace, level, how)


def _finish(res: CliqueResult, k: int, check: bool) -> CliqueResult:
    if check and (len(res.shapes) != k or not verify_clique(res.shapes, res.point)):
        raise AssertionError(f"clique verification failed ({res.outcome})")
    return res


# -- oracles ---------------------------------------------------------------


def _rand_frac(rng: random.Random, lo: int, hi: int, den: int = 64) -> Fraction:
    return Fraction(rng.randint(lo, hi), den)


def _random_around(rng: random.Random, r: Rect) -> Rect:
    """A random rectangle through a random interior point of ``r``."""
    w, h = r.x2 - r.x1, r.y2 - r.y1
    px = r.x1 + w * _rand_frac(rng, 1, 63)
    py = r.y1 + h * _rand_frac(rng, 1, 63)
    return Rect(
        px - w * _rand_frac(rng, 1, 96),
        px + w * _rand_frac(rng, 1, 96),
        py - h * _rand_frac(rng, 1, 96),
        py + h * _rand_frac(rng, 1, 96),
    )


def random_oracle(seed: int) -> ChildOracle:
    rng = random.Random(seed)

    def cb(parents, count):
        r = intersect(parents[0], parents[1])
        return [_random_around(rng, r) for _ in range(count)]

    return ChildOracle(cb, f"random:{seed}")


def _strips(r: Rect, count: int, start: int) -> list[Rect]:
    """Thin horizontal strips through ``r`` crossing one side each, alternating sides."""
    w, h = r.x2 - r.x1, r.y2 - r.y1
    cy = r.y1 + h / 2
    out = []
    for j in range(count):
        half = h / (4 + j)
        if (start + j) % 2 == 0:
            x1, x2 = r.x1 - 4 * w, r.x1 + w / 3
        else:
            x1, x2 = r.x2 - w / 3, r.x2 + 4 * w
        out.append(Rect(x1, x2, cy - half, cy + half))
    return out


def stall_oracle(axis: str = H) -> ChildOracle:
    """Adversary whose children all cross the same pair of sides of v_{i-1} & v_i."""
    calls = [0]

    def cb(parents, count):
        r = intersect(parents[0], parents[1])
        calls[0] += 1
        if axis == H:
            return _strips(r, count, calls[0])
        return [s.transpose() for s in _strips(r.transpose(), count, calls[0])]

    return ChildOracle(cb, f"stall-{axis.lower()}")


def corner_oracle() -> ChildOracle:
    """Adversary whose children each reach past a corner of the newer parent."""

    def cb(parents, count):
        a, b = parents
        r = intersect(a, b)
        cx, cy = r.center()
        dx, dy = b.x2 - b.x1, b.y2 - b.y1
        out = []
        for j in range(count):
            sx, sy = (j % 4) // 2, j % 2
            xs = (cx, b.x2 + dx) if sx else (b.x1 - dx, cx)
            ys = (cy, b.y2 + dy) if sy else (b.y1 - dy, cy)
            out.append(Rect(xs[0], xs[1], ys[0], ys[1]))
        return out

    return ChildOracle(cb, "corner")


def pool_oracle(pool: Sequence[Rect]) -> ChildOracle:
    """Walk a fixed rectangle family: children are unused members meeting both parents."""
    used: set[int] = set()

    def cb(parents, count):
        out = []
        for idx, r in enumerate(pool):
            if idx in used or r in parents:
                continue
            if all(intersect(r, p) is not None for p in parents):
                out.append(r)
                used.add(idx)
                if len(out) == count:
                    break
        return out

    return ChildOracle(cb, "file")


def tree_oracle(tree, shapes: dict[int, Rect]) -> ChildOracle:
    """Walk a materialized universal 2-tree whose vertices carry rectangles."""
    where = {s: v for v, s in shapes.items()}
    kids: dict[tuple[int, int], list[int]] = {}
    for (a, b), lvl in tree.level.items():
        if lvl == 0:
            continue
        older, newer = (a, b) if a < b else (b, a)
        kids.setdefault(newer, []).append(older)
    children_of: dict[frozenset, list[int]] = {}
    for child, parents in kids.items():
        children_of.setdefault(frozenset(parents), []).append(child)

    def cb(parents, count):
        key = frozenset(where[p] for p in parents)
        return [shapes[c] for c in sorted(children_of.get(key, []))][:count]

    return ChildOracle(cb, "tree")


def realize_universal_2tree(tree, rng: random.Random, root: tuple[Rect, Rect] | None = None) -> dict[int, Rect]:
    """Random rectangle for every vertex of a materialized T_{h,d}, each child meeting both parents."""
    r0, r1 = root or (Rect(0, 4, 0, 4), Rect(2, 6, 1, 5))
    shapes = {0: r0, 1: r1}
    parent_pair: dict[int, list[int]] = {}
    for i, _, (a, b) in tree.iter_edges():
        if i:
            parent_pair.setdefault(b, []).append(a)
    for v in sorted(parent_pair):
        p, q = parent_pair[v]
        shapes[v] = _random_around(rng, intersect(shapes[p], shapes[q]))
    return shapes


# -- boxes -----------------------------------------------------------------


def intersect_boxes(a: Box, b: Box) -> Box | None:
    lo = tuple(max(x, y) for x, y in zip(a.lo, b.lo))
    hi = tuple(min(x, y) for x, y in zip(a.hi, b.hi))
    if all(l < h for l, h in zip(lo, hi)):
        return Box(lo, hi)
    return None


def common_box(boxes: Iterable[Box]) -> Box | None:
    acc = None
    for i, b in enumerate(boxes):
        acc = b if i == 0 else intersect_boxes(acc, b)
        if acc is None:
            return None
    return acc


def drop_redundant(boxes: Sequence[Box]) -> list[Box]:
    """Remove the first box that contributes none of the 2d faces of the intersection.

    Each face goes to the lowest-index box attaining it.
    """
    d = boxes[0].dim
    owners = set()
    for axis in range(d):
        top_lo = max(b.lo[axis] for b in boxes)
        owners.add(next(i for i, b in enumerate(boxes) if b.lo[axis] == top_lo))
        low_hi = min(b.hi[axis] for b in boxes)
        owners.add(next(i for i, b in enumerate(boxes) if b.hi[axis] == low_hi))
    spare = next((i for i in range(len(boxes)) if i not in owners), None)
    if spare is None:
        raise OrthoError("every box defines a face; need more than 2d boxes")
    return [b for i, b in enumerate(boxes) if i != spare]


@dataclass
class BoxCliqueResult:
    boxes: list[Box]
    point: Point
    rounds: int

    def to_dict(self) -> dict:
        return {
            "boxes": [b.to_list() for b in self.boxes],
            "point": [fmt(c) for c in self.point],
            "rounds": self.rounds,
        }


def box_find_clique(root_clique: Sequence[Box], oracle: ChildOracle, k: int, d: int) -> BoxCliqueResult:
    """k pairwise-intersecting boxes grown from a (2d+1)-clique of d-boxes.

    Keeps X (everything collected) and S (2d boxes with the same common
    intersection), asking the oracle for one box adjacent to all of S per round.
    """
    root = list(root_clique)
    if len(root) != 2 * d + 1 or any(b.dim != d for b in root):
        raise OrthoError(f"root must be {2 * d + 1} boxes of dimension {d}")
    if common_box(root) is None:
        raise EmptyIntersection("root boxes share no point")
    rounds = max(0, k - 2 * d - 1)
    xs = list(root)
    ss = drop_redundant(xs)
    for _ in range(rounds):
        got = oracle.request(ss, 1)
        if not got:
            raise Exhausted("box oracle returned nothing")
        v = got[0]
        xs.append(v)
        ss = drop_redundant(ss + [v])
        if common_box(xs) != common_box(ss):
            raise AssertionError("S lost track of the common intersection of X")
    chosen = xs[:k] if k < len(xs) else xs
    point = common_box(xs).center()
    if not all(b.contains(point) for b in chosen):
        raise AssertionError("box clique verification failed")
    return BoxCliqueResult(chosen, point, rounds)


def random_box_around(rng: random.Random, r: Box) -> Box:
    lo, hi = [], []
    for a, b in zip(r.lo, r.hi):
        w = b - a
        p = a + w * _rand_frac(rng, 1, 63)
        lo.append(p - w * _rand_frac(rng, 1, 160))
        hi.append(p + w * _rand_frac(rng, 1, 160))
    return Box(tuple(lo), tuple(hi))


def random_box_oracle(seed: int) -> ChildOracle:
    rng = random.Random(seed)

    def cb(parents, count):
        r = common_box(parents)
        return [random_box_around(rng, r) for _ in range(count)]

    return ChildOracle(cb, f"random:{seed}")


def random_root_boxes(rng: random.Random, d: int) -> list[Box]:
    """2d+1 random boxes through a common point."""
    p = [_rand_frac(rng, 1, 63) for _ in range(d)]
    out = []
    for _ in range(2 * d + 1):
        lo = tuple(c - _rand_frac(rng, 1, 64) for c in p)
        hi = tuple(c + _rand_frac(rng, 1, 64) for c in p)
        out.append(Box(lo, hi))
    return out


# -- families and path decompositions --------------------------------------


def rect_graph(rects: Sequence[Rect]) -> Graph:
    """Intersection graph; vertex i is ``rects[i]``."""
    return Graph.from_edges(
        len(rects),
        [(i, j) for i, j in combinations(range(len(rects)), 2) if intersect(rects[i], rects[j])],
    )


def _interval_bags(intervals: Sequence[tuple[Fraction, Fraction]]) -> PathDecomposition:
    cuts = sorted({c for iv in intervals for c in iv})
    bags = []
    for a, b in zip(cuts, cuts[1:]):
        bag = frozenset(i for i, (lo, hi) in enumerate(intervals) if lo <= a and b <= hi)
        if bag:
            bags.append(bag)
    return PathDecomposition(tuple(bags))


def rects_to_paths(rects: Sequence[Rect]) -> tuple[PathDecomposition, PathDecomposition]:
    """Slab decompositions from an x-sweep and a y-sweep; empty slabs are dropped."""
    return (
        _interval_bags([(r.x1, r.x2) for r in rects]),
        _interval_bags([(r.y1, r.y2) for r in rects]),
    )


def _span(p: PathDecomposition) -> dict[int, tuple[int, int]]:
    out: dict[int, tuple[int, int]] = {}
    for i, bag in enumerate(p.bags):
        for v in bag:
            lo, _ = out.get(v, (i, i))
            out[v] = (lo, i)
    return out


def paths_to_rects(p1: PathDecomposition, p2: PathDecomposition) -> dict[int, Rect]:
    """Vertex with bag intervals [a, b] and [c, d] becomes (a-1/2, b+1/2) x (c-1/2, d+1/2)."""
    s1, s2 = _span(p1), _span(p2)
    if set(s1) != set(s2):
        raise OrthoError("path decompositions cover different vertices")
    half = Fraction(1, 2)
    return {
        v: Rect(s1[v][0] - half, s1[v][1] + half, s2[v][0] - half, s2[v][1] + half)
        for v in sorted(s1)
    }


def random_rects(rng: random.Random, count: int, size: int = 12) -> list[Rect]:
    """Rectangles with small integer corners, so coincident sides are common."""
    out = []
    for _ in range(count):
        x1, x2 = sorted(rng.sample(range(size + 1), 2))
        y1, y2 = sorted(rng.sample(range(size + 1), 2))
        out.append(Rect(x1, x2, y1, y2))
    return out


def rects_to_dict(rects: Sequence[Rect]) -> dict:
    return {"rects": [r.to_list() for r in rects]}


def rects_from_dict(data: dict) -> list[Rect]:
    try:
        return [Rect.from_list(c) for c in data["rects"]]
    except (KeyError, TypeError) as exc:
        raise OrthoError(f"malformed rect JSON: {exc}") from exc
