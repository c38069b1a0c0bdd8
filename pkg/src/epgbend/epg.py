"""Grid-path geometry: paths on the integer lattice, the intersection /
display / visibility predicates, the representation verifier, and
coordinate normalization.

A path is an axis-aligned polyline on the unit grid, stored as its corner
list.  Two vertices of a represented graph are adjacent exactly when their
paths share at least one unit grid edge; meeting at a grid point does not
count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from .errors import OrientationMismatch

Point = Tuple[int, int]


def _merge_collinear(points: Sequence[Point]) -> List[Point]:
    """Drop interior corner points that do not change direction."""
    merged: List[Point] = [tuple(points[0])]
    for p in points[1:]:
        p = tuple(p)
        if p == merged[-1]:
            continue
        if len(merged) >= 2:
            a, b = merged[-2], merged[-1]
            same_axis = (a[0] == b[0] == p[0]) or (a[1] == b[1] == p[1])
            if same_axis:
                # forbid reversals: they would retrace grid edges
                if (b[0] - a[0]) * (p[0] - b[0]) < 0 or (b[1] - a[1]) * (p[1] - b[1]) < 0:
                    raise ValueError("path reverses onto itself at %r" % (b,))
                merged[-1] = p
                continue
        merged.append(p)
    return merged


@dataclass(frozen=True)
class Segment:
    """One maximal straight piece of a path.

    orient is 'h' (lying on horizontal line y=line, spanning x in [lo,hi])
    or 'v' (on vertical line x=line, spanning y in [lo,hi]).
    """

    orient: str
    line: int
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError("segment must have positive length")

    def edge_count(self) -> int:
        return self.hi - self.lo


class GridPath:
    """An axis-aligned lattice path given by its corner points.

    Consecutive points must differ in exactly one coordinate.  Collinear
    runs are merged on construction, so ``bends == len(points) - 2``.
    The covered unit grid edges must be pairwise distinct.
    """

    __slots__ = ("points",)

    def __init__(self, points: Sequence[Point]):
        if len(points) < 2:
            raise ValueError("a grid path needs at least two points")
        for p in points:
            if len(p) != 2:
                raise ValueError("points must be (x, y) pairs")
        for a, b in zip(points, points[1:]):
            if (a[0] == b[0]) == (a[1] == b[1]):
                raise ValueError(
                    "consecutive points must differ in exactly one coordinate: %r -> %r" % (a, b)
                )
        self.points: Tuple[Point, ...] = tuple(_merge_collinear(points))
        self._check_no_duplicate_edges()

    def _check_no_duplicate_edges(self):
        segs = self.segments()
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                a, b = segs[i], segs[j]
                if a.orient == b.orient and a.line == b.line:
                    if min(a.hi, b.hi) - max(a.lo, b.lo) > 0:
                        raise ValueError("path covers a grid edge twice")

    def segments(self) -> List[Segment]:
        out = []
        for a, b in zip(self.points, self.points[1:]):
            if a[1] == b[1]:
                out.append(Segment("h", a[1], min(a[0], b[0]), max(a[0], b[0])))
            else:
                out.append(Segment("v", a[0], min(a[1], b[1]), max(a[1], b[1])))
        return out

    def bend_count(self) -> int:
        return len(self.points) - 2

    def unit_edges(self) -> Iterator[Tuple[str, int, int]]:
        """Yield covered unit edges as ('h', y, x) or ('v', x, y) keys.

        A horizontal key ('h', y, x) is the edge from (x, y) to (x+1, y).
        Intended for small paths; large representations should use the
        interval predicates instead.
        """
        for s in self.segments():
            for c in range(s.lo, s.hi):
                yield (s.orient, s.line, c)

    def translated(self, dx: int, dy: int) -> "GridPath":
        return GridPath([(x + dx, y + dy) for x, y in self.points])

    def __eq__(self, other):
        return isinstance(other, GridPath) and (
            self.points == other.points or self.points == other.points[::-1]
        )

    def __hash__(self):
        return hash(min(self.points, self.points[::-1]))

    def __repr__(self):
        return "GridPath(%r)" % (list(self.points),)


def bend_count(p: GridPath) -> int:
    """Number of direction changes along the path."""
    return p.bend_count()


@dataclass(frozen=True)
class SegmentRef:
    """A sub-segment of some path: a span on one grid line, with an owner."""

    orient: str
    line: int
    lo: int
    hi: int
    owner: int

    def __post_init__(self):
        if self.orient not in ("h", "v"):
            raise ValueError("orient must be 'h' or 'v'")
        if self.lo >= self.hi:
            raise ValueError("segment span must have positive length")

    @property
    def span(self) -> Tuple[int, int]:
        return (self.lo, self.hi)


class EpgRepresentation:
    """Assignment of one grid path per vertex.

    ``ignore_pairs`` holds vertex pairs whose path intersections are exempt
    from verification (connector edges added to join components).
    """

    def __init__(self, paths: Dict[int, GridPath], ignore_pairs: Iterable[Tuple[int, int]] = ()):
        self.paths: Dict[int, GridPath] = dict(paths)
        self.ignore_pairs: FrozenSet[FrozenSet[int]] = frozenset(
            frozenset(p) for p in ignore_pairs
        )

    def vertices(self):
        return self.paths.keys()

    def max_bends(self) -> int:
        return max((p.bend_count() for p in self.paths.values()), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, EpgRepresentation)
            and self.paths == other.paths
            and self.ignore_pairs == other.ignore_pairs
        )


# ---------------------------------------------------------------------------
# intersection predicates
# ---------------------------------------------------------------------------


def shared_grid_edges(p: GridPath, q: GridPath) -> set:
    """Exactly the unit grid edges covered by both paths.

    Touching at a single grid point yields the empty set.  Materializes the
    edge set, so use only where paths are short; the verifier works on
    interval overlaps instead.
    """
    out = set()
    qsegs = q.segments()
    for a in p.segments():
        for b in qsegs:
            if a.orient == b.orient and a.line == b.line:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                for c in range(lo, hi):
                    out.add((a.orient, a.line, c))
    return out


def paths_intersect(p: GridPath, q: GridPath) -> bool:
    """True iff the two paths share at least one unit grid edge."""
    qsegs = q.segments()
    for a in p.segments():
        for b in qsegs:
            if a.orient == b.orient and a.line == b.line:
                if min(a.hi, b.hi) - max(a.lo, b.lo) > 0:
                    return True
    return False


class LineIndex:
    """Per-grid-line interval index over all segments of a representation."""

    def __init__(self, rep: EpgRepresentation):
        self.lines: Dict[Tuple[str, int], List[Tuple[int, int, int]]] = {}
        for v, path in rep.paths.items():
            for s in path.segments():
                self.lines.setdefault((s.orient, s.line), []).append((s.lo, s.hi, v))
        for ivs in self.lines.values():
            ivs.sort()

    def intervals_on(self, orient: str, line: int) -> List[Tuple[int, int, int]]:
        return self.lines.get((orient, line), [])

    def owners_overlapping(self, seg: SegmentRef) -> set:
        """Vertices owning at least one unit edge inside seg's span."""
        out = set()
        for lo, hi, v in self.intervals_on(seg.orient, seg.line):
            if min(hi, seg.hi) - max(lo, seg.lo) > 0:
                out.add(v)
        return out

    def covers(self, seg: SegmentRef, v: int) -> bool:
        """True iff every unit edge of seg lies on v's path."""
        spans = sorted(
            (lo, hi) for lo, hi, w in self.intervals_on(seg.orient, seg.line) if w == v
        )
        pos = seg.lo
        for lo, hi in spans:
            if lo > pos:
                break
            pos = max(pos, hi)
            if pos >= seg.hi:
                return True
        return pos >= seg.hi


def displays_vertex(rep: EpgRepresentation, v: int, seg: SegmentRef, index: LineIndex = None) -> bool:
    """True iff every unit edge of seg is private to P(v)."""
    idx = index if index is not None else LineIndex(rep)
    if not idx.covers(seg, v):
        return False
    return idx.owners_overlapping(seg) == {v}


def displays_edge(
    rep: EpgRepresentation, pair: Tuple[int, int], seg: SegmentRef, index: LineIndex = None
) -> bool:
    """True iff every unit edge of seg belongs to both paths and no other."""
    u, v = pair
    idx = index if index is not None else LineIndex(rep)
    if not (idx.covers(seg, u) and idx.covers(seg, v)):
        return False
    return idx.owners_overlapping(seg) == {u, v}


def sees(s1: SegmentRef, s2: SegmentRef) -> bool:
    """Whether a grid line perpendicular to both sub-segments crosses both.

    Defined only for two sub-segments of equal orientation; their spans must
    share at least one grid-line coordinate (endpoint contact counts).
    """
    if s1.orient != s2.orient:
        raise OrientationMismatch("cannot compare a horizontal with a vertical sub-segment")
    return max(s1.lo, s2.lo) <= min(s1.hi, s2.hi)


# ---------------------------------------------------------------------------
# verifier
# ---------------------------------------------------------------------------


@dataclass
class Violation:
    kind: str  # "missing-edge" | "spurious-edge"
    pair: Tuple[int, int]


@dataclass
class VerifyReport:
    ok: bool
    violations: List[Violation] = field(default_factory=list)
    max_bends: int = 0

    def summary(self) -> str:
        if self.ok:
            return "ok (max bends %d)" % self.max_bends
        kinds = {}
        for v in self.violations:
            kinds[v.kind] = kinds.get(v.kind, 0) + 1
        parts = ", ".join("%d %s" % (n, k) for k, n in sorted(kinds.items()))
        return "FAILED: %s (max bends %d)" % (parts, self.max_bends)


def intersecting_pairs(rep: EpgRepresentation) -> set:
    """All vertex pairs whose paths share at least one unit grid edge.

    Line sweep over the per-line interval lists: near-linear in the number
    of segments plus the number of intersecting pairs.
    """
    idx = LineIndex(rep)
    pairs = set()
    for ivs in idx.lines.values():
        active: List[Tuple[int, int]] = []  # (hi, owner), pruned lazily
        for lo, hi, v in ivs:
            active = [(h, w) for h, w in active if h - lo > 0]
            for h, w in active:
                if w != v:
                    pairs.add(frozenset((v, w)))
            active.append((hi, v))
    return pairs


def verify_epg(rep: EpgRepresentation, g) -> VerifyReport:
    """Check adjacency <=> shared-grid-edge against the graph g.

    Report-style: never raises on a bad representation.  Pairs listed in
    rep.ignore_pairs are exempt in both directions.
    """
    report = VerifyReport(ok=True, max_bends=rep.max_bends())
    missing_paths = [v for v in g.vertices if v not in rep.paths]
    for v in missing_paths:
        report.violations.append(Violation("missing-path", (v, v)))
    got = intersecting_pairs(rep)
    want = {frozenset((u, v)) for u, v in g.edges}
    ignore = rep.ignore_pairs
    for pair in got - want:
        if pair in ignore or len(pair) < 2:
            continue
        u, v = sorted(pair)
        if u in g.adjacency and v in g.adjacency:
            report.violations.append(Violation("spurious-edge", (u, v)))
    for pair in want - got:
        if pair in ignore:
            continue
        u, v = sorted(pair)
        report.violations.append(Violation("missing-edge", (u, v)))
    report.ok = not report.violations
    return report


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


def _rank_map(values) -> Dict[int, int]:
    return {v: i for i, v in enumerate(sorted(set(values)))}


def normalize_with_maps(rep: EpgRepresentation):
    """Rank-compress x and y coordinates independently.

    Returns (new_rep, x_map, y_map).  The maps are order-preserving, so
    every pairwise shared-edge relation, every bend count and every
    visibility relation is preserved exactly.
    """
    xs, ys = [], []
    for p in rep.paths.values():
        for x, y in p.points:
            xs.append(x)
            ys.append(y)
    xm, ym = _rank_map(xs), _rank_map(ys)
    new_paths = {
        v: GridPath([(xm[x], ym[y]) for x, y in p.points]) for v, p in rep.paths.items()
    }
    return EpgRepresentation(new_paths, rep.ignore_pairs), xm, ym


def normalize(rep: EpgRepresentation) -> EpgRepresentation:
    """Rank-compressed copy of the representation (see normalize_with_maps)."""
    return normalize_with_maps(rep)[0]


# ---------------------------------------------------------------------------
# JSON form
# ---------------------------------------------------------------------------


def rep_to_json(rep: EpgRepresentation) -> dict:
    return {
        "paths": {str(v): [list(pt) for pt in p.points] for v, p in rep.paths.items()},
        "ignore_pairs": sorted(sorted(pair) for pair in rep.ignore_pairs),
    }


def rep_from_json(data: dict) -> EpgRepresentation:
    paths = {int(v): GridPath([tuple(pt) for pt in pts]) for v, pts in data["paths"].items()}
    return EpgRepresentation(paths, [tuple(p) for p in data.get("ignore_pairs", [])])
