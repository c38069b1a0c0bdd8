"""4-bend representations of planar graphs.

The pipeline stellates the input to a plane triangulation, represents the
outer triangle with a fixed template, and then repeatedly fills the
4-connected piece hanging below some pending facial triangle: the piece
minus one outer edge is a non-separating near-triangulation, its rectangle
dual (with the t-segment ordering) is scaled into the area visible from the
triangle's reserved segments, every rectangle becomes a snake path, and the
paths of boundary neighbors are extended onto the reserved segments.  Each
facial triangle of the piece that still has hidden vertices inside receives
a fresh reserved region, so the recursion can continue independently.

All intermediate geometry lives on a Fraction grid; the result is scaled to
integers at the end.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .epg import EpgRepresentation, GridPath
from .errors import InvariantBroken, NonPlanar, RegionTooSmall
from .graphs import (
    Graph,
    PlaneEmbedding,
    TriangulationDecomposition,
    add_connecting_edges,
    compute_planar_embedding,
    decomposition_of,
    stellate_to_triangulation,
)
from .rectdual import NstInput, Rect, add_t_segments, check_rect_dual, rectangular_dual

F = Fraction


@dataclass(frozen=True)
class FSeg:
    """Sub-segment on a grid line, Fraction coordinates, with an owner."""

    orient: str  # 'h' or 'v'
    line: Fraction
    lo: Fraction
    hi: Fraction
    owner: int

    def __post_init__(self):
        if self.lo >= self.hi:
            raise ValueError("empty sub-segment %r" % (self,))

    def sub(self, lo, hi) -> "FSeg":
        return replace(self, lo=F(lo), hi=F(hi))


@dataclass(frozen=True)
class Transform:
    """One of the eight grid symmetries: global = T(canonical)."""

    swap: bool = False
    sx: int = 1
    sy: int = 1

    def apply(self, x, y):
        if self.swap:
            x, y = y, x
        return self.sx * x, self.sy * y

    def invert(self, x, y):
        x, y = self.sx * x, self.sy * y
        if self.swap:
            x, y = y, x
        return x, y


def _swap_invert(t: Transform, seg: FSeg) -> FSeg:
    # canonical point c satisfies global = T(c):  g = (sx*cy, sy*cx)
    # so c = (gy/sy, gx/sx).
    if seg.orient == "v":
        # global x = line, y in [lo,hi]  ->  cx = y/sy in span, cy = line/sx
        line = seg.line * t.sx  # == line / sx since sx in {1,-1}
        lo, hi = sorted((seg.lo * t.sy, seg.hi * t.sy))
        return FSeg("h", line, lo, hi, seg.owner)
    line = seg.line * t.sy
    lo, hi = sorted((seg.lo * t.sx, seg.hi * t.sx))
    return FSeg("v", line, lo, hi, seg.owner)


def _nonswap_invert(t: Transform, seg: FSeg) -> FSeg:
    if seg.orient == "v":
        line = seg.line * t.sx
        lo, hi = sorted((seg.lo * t.sy, seg.hi * t.sy))
        return FSeg("v", line, lo, hi, seg.owner)
    line = seg.line * t.sy
    lo, hi = sorted((seg.lo * t.sx, seg.hi * t.sx))
    return FSeg("h", line, lo, hi, seg.owner)


def canonical_seg(t: Transform, seg: FSeg) -> FSeg:
    return _swap_invert(t, seg) if t.swap else _nonswap_invert(t, seg)


ALL_TRANSFORMS = [
    Transform(swap, sx, sy)
    for swap in (False, True)
    for sx in (1, -1)
    for sy in (1, -1)
]


@dataclass
class RegionRecord:
    """Reserved region + displaying segments for one facial triangle.

    The roles (u, v, w) are fixed actual vertex ids; segments are stored in
    global coordinates and validated in the canonical frame obtained through
    ``transform``.
    """

    u: int
    v: int
    w: int
    rtype: str  # 'i' | 'ii'
    s_u: FSeg
    s_v: FSeg
    s_w: FSeg
    s_uv: FSeg
    transform: Transform
    region: List[Tuple[Fraction, Fraction, Fraction, Fraction]]

    @property
    def tri(self) -> Tuple[int, int, int]:
        return tuple(sorted((self.u, self.v, self.w)))

    def canonical(self):
        t = self.transform
        return (
            canonical_seg(t, self.s_u),
            canonical_seg(t, self.s_v),
            canonical_seg(t, self.s_w),
            canonical_seg(t, self.s_uv),
        )


def record_geometry_issues(rec: RegionRecord) -> List[str]:
    """Canonical-frame geometric conditions of the invariant (no display
    checks; those need the representation)."""
    out = []
    su, sv, sw, suv = rec.canonical()
    if su.orient != "v":
        out.append("s_u must be vertical")
        return out
    if sv.orient != "h":
        out.append("s_v must be horizontal")
        return out
    if suv.orient != "v" or suv.line != su.line:
        out.append("s_uv must lie on s_u's grid line")
    elif suv.lo < su.hi:
        out.append("s_uv must lie above s_u")
    if not (sv.line > su.hi and sv.lo > su.line):
        out.append("s_v must lie to the top-right of s_u")
    if sv.line <= suv.hi:
        out.append("s_v must clear the top of s_uv")
    if rec.rtype == "i":
        if sw.orient != "v":
            out.append("type i needs a vertical s_w")
            return out
        if not sw.line > su.line:
            out.append("s_w must lie right of s_u")
        if not sw.line >= sv.lo:
            out.append("s_w must not lie left of s_v")
        if not (max(su.lo, sw.lo) < min(su.hi, sw.hi)):
            out.append("s_w must see s_u")
        if not sv.lo < min(sv.hi, sw.line):
            out.append("empty visibility area (x)")
    else:
        if sw.orient != "h":
            out.append("type ii needs a horizontal s_w")
            return out
        if not sw.line < su.lo:
            out.append("s_w must lie below s_u's span")
        if not sw.lo > su.line:
            out.append("s_w must lie right of s_u")
        if not sw.lo >= sv.lo:
            out.append("s_w must not lie left of s_v")
        if not (max(sv.lo, sw.lo) < min(sv.hi, sw.hi)):
            out.append("s_w must see s_v")
    return out


def record_vis_box(rec: RegionRecord):
    """Canonical-frame visibility box (x1, y1, x2, y2)."""
    su, sv, sw, _ = rec.canonical()
    if rec.rtype == "i":
        x1, x2 = sv.lo, min(sv.hi, sw.line)
        y1, y2 = max(su.lo, sw.lo), min(su.hi, sw.hi)
    else:
        x1, x2 = max(sv.lo, sw.lo), min(sv.hi, sw.hi)
        y1, y2 = su.lo, su.hi
    return x1, y1, x2, y2


def _rects_disjoint(a, b) -> bool:
    ax1, ay1, ax2, ay2 = a
    bx1, by1, bx2, by2 = b
    return min(ax2, bx2) <= max(ax1, bx1) or min(ay2, by2) <= max(ay1, by1)


def regions_disjoint(r1: RegionRecord, r2: RegionRecord) -> bool:
    for a in r1.region:
        for b in r2.region:
            if not _rects_disjoint(a, b):
                return False
    return True


def region_contains(outer: List, inner: List) -> bool:
    """Every inner rect must be covered by the union of outer rects."""

    def covered(rect, covers):
        pending = [rect]
        for c in covers:
            nxt = []
            cx1, cy1, cx2, cy2 = c
            for (x1, y1, x2, y2) in pending:
                if min(x2, cx2) <= max(x1, cx1) or min(y2, cy2) <= max(y1, cy1):
                    nxt.append((x1, y1, x2, y2))
                    continue
                # subtract c from the rect
                if x1 < cx1:
                    nxt.append((x1, y1, min(x2, cx1), y2))
                if x2 > cx2:
                    nxt.append((max(x1, cx2), y1, x2, y2))
                mx1, mx2 = max(x1, cx1), min(x2, cx2)
                if y1 < cy1:
                    nxt.append((mx1, y1, mx2, min(y2, cy1)))
                if y2 > cy2:
                    nxt.append((mx1, max(y1, cy2), mx2, y2))
            pending = [r for r in nxt if r[0] < r[2] and r[1] < r[3]]
            if not pending:
                return True
        return not pending

    return all(covered(r, outer) for r in inner)


class FLineIndex:
    """Per-line interval index over Fraction-coordinate path segments."""

    def __init__(self):
        self.lines: Dict[Tuple[str, Fraction], List[Tuple[Fraction, Fraction, int]]] = {}

    def add(self, orient, line, lo, hi, owner):
        if lo > hi:
            lo, hi = hi, lo
        if lo == hi:
            return
        insort(self.lines.setdefault((orient, line), []), (lo, hi, owner))

    def add_path(self, owner, pts):
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if x1 == x2:
                self.add("v", x1, y1, y2, owner)
            else:
                self.add("h", y1, x1, x2, owner)

    def overlapping(self, orient, line, lo, hi):
        out = []
        for a, b, o in self.lines.get((orient, line), []):
            if a >= hi:
                break
            if min(b, hi) > max(a, lo):
                out.append((a, b, o))
        return out

    def owners_on(self, orient, line, lo, hi) -> Set[int]:
        return {o for _, _, o in self.overlapping(orient, line, lo, hi)}

    def covers(self, seg: FSeg) -> bool:
        pos = seg.lo
        for a, b, o in self.lines.get((seg.orient, seg.line), []):
            if o != seg.owner:
                continue
            if a > pos:
                break
            pos = max(pos, b)
            if pos >= seg.hi:
                return True
        return pos >= seg.hi

    def displays(self, seg: FSeg, owners: FrozenSet[int]) -> bool:
        """seg's edges belong to exactly `owners` (each covering fully)."""
        found = self.owners_on(seg.orient, seg.line, seg.lo, seg.hi)
        if found != set(owners):
            return False
        for o in owners:
            if not self.covers(replace(seg, owner=o)):
                return False
        return True

    def box_owners(self, x1, y1, x2, y2) -> Set[int]:
        """Owners of any segment content strictly inside the open box."""
        out = set()
        for (orient, line), ivs in self.lines.items():
            if orient == "v":
                if not (x1 < line < x2):
                    continue
                for a, b, o in ivs:
                    if min(b, y2) > max(a, y1):
                        out.add(o)
            else:
                if not (y1 < line < y2):
                    continue
                for a, b, o in ivs:
                    if min(b, x2) > max(a, x1):
                        out.add(o)
        return out


@dataclass
class InvariantReport:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def add(self, msg):
        self.violations.append(msg)
        self.ok = False


def check_invariant_I(rep_or_index, records: Sequence[RegionRecord]) -> InvariantReport:
    """Validate every record's geometry, display conditions and pairwise
    region disjointness.

    Accepts either an EpgRepresentation (integer coordinates) or a
    builder-internal FLineIndex.
    """
    report = InvariantReport(ok=True)
    if isinstance(rep_or_index, FLineIndex):
        idx = rep_or_index
    else:
        idx = FLineIndex()
        for v, path in rep_or_index.paths.items():
            idx.add_path(v, [(F(x), F(y)) for x, y in path.points])
    records = list(records)
    for rec in records:
        name = "record %r" % (rec.tri,)
        for issue in record_geometry_issues(rec):
            report.add("%s: %s" % (name, issue))
        for seg, who in ((rec.s_u, rec.u), (rec.s_v, rec.v), (rec.s_w, rec.w)):
            if not idx.displays(seg, frozenset((who,))):
                report.add("%s: segment of %r does not display it" % (name, who))
        if not idx.displays(rec.s_uv, frozenset((rec.u, rec.v))):
            report.add("%s: s_uv does not display the edge" % name)
    for i in range(len(records)):
        for j in range(i + 1, len(records)):
            if not regions_disjoint(records[i], records[j]):
                report.add(
                    "regions of %r and %r overlap"
                    % (records[i].tri, records[j].tri)
                )
    return report
