"""Rectangle (contact) representations of non-separating near-triangulations.

A rectangular dual assigns each vertex an axis-aligned rectangle so that the
rectangles tile a frame and two rectangles share a boundary segment of
positive length exactly when the vertices are adjacent.  On top of the
tiling, every rectangle receives a vertical line t_v, strictly inside its
x-span, lying to the right of t_w for every rectangle w touching its top
side.

The tiling is computed from a transversal edge structure: every inner edge
is labeled "vertical contact" (T2, pointing left-to-right) or "horizontal
contact" (T1, pointing bottom-to-top), so that around every inner vertex the
four label/direction blocks appear contiguously in rotation order, and the
four outer corner vertices see a single block each.  The structure is found
by constraint propagation with backtracking and is validated downstream by
check_rect_dual, which works on the exact integer geometry alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import InvariantBroken, NotFourConnected, NotNst, NotOuterEdge
from .graphs import Graph, PlaneEmbedding, _all_triangles

# edge roles at a vertex, in required rotation order around an inner vertex
_T1OUT, _T2IN, _T1IN, _T2OUT = 0, 1, 2, 3


@dataclass(frozen=True)
class Rect:
    x1: object
    y1: object
    x2: object
    y2: object

    def __post_init__(self):
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise ValueError("degenerate rectangle %r" % (self,))

    def area(self):
        return (self.x2 - self.x1) * (self.y2 - self.y1)


@dataclass
class RectDual:
    rects: Dict[int, Rect]
    frame: Rect
    t: Dict[int, object] = field(default_factory=dict)


@dataclass
class NstInput:
    """A non-separating near-triangulation with designated frame corners.

    corners = (west, south, east, north); consecutive entries (cyclically)
    are the outer quadrangle edges.
    """

    graph: Graph
    embedding: PlaneEmbedding
    corners: Tuple[int, int, int, int]


def nst_from_triangulation(emb: PlaneEmbedding, edge: Tuple[int, int]) -> NstInput:
    """Delete an outer edge of a 4-connected plane triangulation.

    The outer face becomes the quadrangle (a, t, b, c) where t is the inner
    vertex of the face at the deleted edge {a, b} and c the third outer
    vertex.
    """
    g = emb.graph
    if not emb.is_triangulation() or g.n < 5:
        raise NotFourConnected("need a 4-connected triangulation on >= 5 vertices")
    face_keys = emb.triangle_faces()
    for tri in _all_triangles(g):
        if frozenset(tri) not in face_keys:
            raise NotFourConnected("separating triangle %r" % (tri,))
    outer = emb.outer_face
    a, b = edge
    if frozenset((a, b)) not in {
        frozenset((outer[i], outer[(i + 1) % 3])) for i in range(3)
    }:
        raise NotOuterEdge("%r is not an edge of the outer triangle" % (edge,))
    c = next(v for v in outer if v not in (a, b))
    # inner face at {a,b}: whichever of the two incident faces is not outer
    fa = emb.face_of(a, b)
    inner_walk = emb.faces()[fa if fa != emb.outer_face_index else emb.face_of(b, a)]
    t = next(v for v in inner_walk if v not in (a, b))

    g2 = Graph(g.vertices, [e for e in g.edges if e != (min(a, b), max(a, b))])
    rot = {
        v: tuple(
            u
            for u in emb.rotation[v]
            if not (v in (a, b) and u in (a, b))
        )
        for v in g.vertices
    }
    emb2 = PlaneEmbedding(g2, rot, outer_face=None)
    # locate the quadrangle face and designate it
    quad = None
    for w in emb2.faces():
        if len(w) == 4 and set(w) == {a, t, b, c}:
            quad = w
            break
    if quad is None:
        raise AssertionError("edge deletion did not open a quadrangle")  # pragma: no cover
    emb2 = emb2.with_outer(quad)
    return NstInput(graph=g2, embedding=emb2, corners=(a, t, b, c))


def validate_nst(nst: NstInput):
    g = nst.graph
    if g.n < 4:
        raise NotNst("an NST has at least four vertices")
    if len(set(nst.corners)) != 4:
        raise NotNst("corners must be four distinct vertices")
    emb = nst.embedding
    outer = emb.outer_face
    if len(outer) != 4 or set(outer) != set(nst.corners):
        raise NotNst("outer face must be the corner quadrangle")
    # corners must appear on the outer walk in the given cyclic order
    w0 = list(outer)
    i = w0.index(nst.corners[0])
    walk = tuple(w0[(i + k) % 4] for k in range(4))
    if walk != tuple(nst.corners) and walk != (nst.corners[0],) + tuple(reversed(nst.corners[1:])):
        raise NotNst("corner cyclic order does not match the outer face")
    for i, f in enumerate(emb.faces()):
        if i != emb.outer_face_index and (len(f) != 3 or len(set(f)) != 3):
            raise NotNst("inner face %r is not a triangle" % (f,))
    face_keys = emb.triangle_faces()
    for tri in _all_triangles(g):
        if frozenset(tri) not in face_keys:
            raise NotNst("separating triangle %r" % (tri,))


# ---------------------------------------------------------------------------
# transversal structure search
# ---------------------------------------------------------------------------


def _role_at(state, edge, v):
    """state = (label, head); role of the edge at endpoint v."""
    label, head = state
    if label == 1:
        return _T1IN if head == v else _T1OUT
    return _T2IN if head == v else _T2OUT


def _vertex_feasible(roles: Sequence[Optional[int]]) -> bool:
    """Can the cyclic role sequence be completed to the four contiguous
    nonempty blocks (T1out, T2in, T1in, T2out) in rotation order?"""
    d = len(roles)
    if d < 4:
        return False
    order = (_T1OUT, _T2IN, _T1IN, _T2OUT)
    for s in range(d):
        # roles[s] starts the T1out block
        if roles[s] is not None and roles[s] != _T1OUT:
            continue
        blocks = {0}
        ok = True
        for k in range(1, d):
            r = roles[(s + k) % d]
            nxt = set()
            for b in blocks:
                if r is None or r == order[b]:
                    nxt.add(b)
                if b + 1 < 4 and (r is None or r == order[b + 1]):
                    nxt.add(b + 1)
            if not nxt:
                ok = False
                break
            blocks = nxt
        if ok and 3 in blocks:
            return True
    return False


class _RelSolver:
    """Backtracking search for a transversal structure of an NST."""

    def __init__(self, nst: NstInput):
        self.g = nst.graph
        self.corners = nst.corners
        w, s, e, n = nst.corners
        emb = nst.embedding
        # canonicalize chirality: the traced outer walk must read (w, s, e, n)
        outer = emb.outer_face
        i = list(outer).index(w)
        walk = tuple(outer[(i + k) % 4] for k in range(4))
        if walk == (w, n, e, s):
            rot = {v: tuple(reversed(r)) for v, r in emb.rotation.items()}
            emb = PlaneEmbedding(self.g, rot, outer_face=tuple(reversed(outer)))
        elif walk != (w, s, e, n):
            raise NotNst("corners are not the outer quadrangle")
        self.emb = emb
        quad = {
            frozenset((w, s)),
            frozenset((s, e)),
            frozenset((e, n)),
            frozenset((n, w)),
        }
        self.vars: List[Tuple[int, int]] = sorted(
            e2 for e2 in self.g.edges if frozenset(e2) not in quad
        )
        self.assign: Dict[Tuple[int, int], Tuple[int, int]] = {}
        self.inner = [v for v in self.g.vertices if v not in nst.corners]

    def _states_for(self, edge) -> List[Tuple[int, int]]:
        u, v = edge
        w, s, e, n = self.corners
        states = [(1, u), (1, v), (2, u), (2, v)]

        def corner_filter(x, st):
            label, head = st
            if x == w:
                return label == 2 and head != x
            if x == e:
                return label == 2 and head == x
            if x == n:
                return label == 1 and head == x
            if x == s:
                return label == 1 and head != x
            return True

        return [st for st in states if corner_filter(u, st) and corner_filter(v, st)]

    def _vertex_ok(self, v) -> bool:
        if v in self.corners:
            return True
        roles = []
        for u in self.emb.rotation[v]:
            e = (min(u, v), max(u, v))
            st = self.assign.get(e)
            roles.append(None if st is None else _role_at(st, e, v))
        return _vertex_feasible(roles)

    def _allowed(self, edge) -> List[Tuple[int, int]]:
        out = []
        for st in self._states_for(edge):
            self.assign[edge] = st
            if self._vertex_ok(edge[0]) and self._vertex_ok(edge[1]):
                out.append(st)
            del self.assign[edge]
        return out

    def solve(self) -> Dict[Tuple[int, int], Tuple[int, int]]:
        # seed forced corner edges, then propagate
        trail: List[Tuple[Tuple[int, int], Tuple[int, int]]] = []

        def propagate(dirty: Set[int]) -> bool:
            while dirty:
                v = dirty.pop()
                if v not in self.corners and not self._vertex_ok(v):
                    return False
                for u in self.g.adjacency[v]:
                    e = (min(u, v), max(u, v))
                    if e in self.assign or e not in self.var_set:
                        continue
                    opts = self._allowed(e)
                    if not opts:
                        return False
                    if len(opts) == 1:
                        self.assign[e] = opts[0]
                        trail.append((e, opts[0]))
                        dirty.add(e[0])
                        dirty.add(e[1])
            return True

        self.var_set = set(self.vars)
        for e in self.vars:
            opts = self._states_for(e)
            if not opts:
                raise InvariantBroken("corner constraints exclude every state of %r" % (e,))
            if len(opts) == 1:
                self.assign[e] = opts[0]
                trail.append((e, opts[0]))
        if not propagate(set(self.g.vertices)):
            raise InvariantBroken("transversal structure propagation failed at the root")

        def search() -> bool:
            target = None
            best = None
            for e in self.vars:
                if e in self.assign:
                    continue
                opts = self._allowed(e)
                if not opts:
                    return False
                if best is None or len(opts) < best:
                    best, target, topts = len(opts), e, opts
                    if best == 1:
                        break
            if target is None:
                return True
            mark = len(trail)
            for st in topts:
                self.assign[target] = st
                trail.append((target, st))
                if propagate({target[0], target[1]}) and search():
                    return True
                while len(trail) > mark:
                    e2, _ = trail.pop()
                    del self.assign[e2]
            return False

        if not search():
            raise InvariantBroken("no transversal structure found; input is not a valid NST")
        return dict(self.assign)


# ---------------------------------------------------------------------------
# compaction
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            self.parent[x] = p = self.find(p)
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=repr)] = min(ra, rb, key=repr)


def _longest_paths(nodes, edges, source):
    """Longest path lengths from source in a DAG given as edge list."""
    adj: Dict[object, List[object]] = {n: [] for n in nodes}
    indeg = {n: 0 for n in nodes}
    for a, b in edges:
        adj[a].append(b)
        indeg[b] += 1
    order = []
    stack = sorted([n for n in nodes if indeg[n] == 0], key=repr)
    while stack:
        n = stack.pop()
        order.append(n)
        for m in adj[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                stack.append(m)
    if len(order) != len(nodes):
        raise InvariantBroken("contact classes form a cycle")
    dist = {n: 0 for n in nodes}
    for n in order:
        for m in adj[n]:
            dist[m] = max(dist[m], dist[n] + 1)
    base = dist[source]
    return {n: d - base for n, d in dist.items()}


def _compact(nst: NstInput, labels) -> RectDual:
    w, s, e, n = nst.corners
    g = nst.graph
    ufx, ufy = _UnionFind(), _UnionFind()

    def L(v):
        return ufx.find(("L", v))

    def R(v):
        return ufx.find(("R", v))

    def B(v):
        return ufy.find(("B", v))

    def T(v):
        return ufy.find(("T", v))

    ufx.union(("L", w), "OL")
    ufx.union(("R", e), "OR")
    ufy.union(("B", w), "OB")
    ufy.union(("T", w), "OT")
    ufy.union(("B", e), "OB")
    ufy.union(("T", e), "OT")
    ufy.union(("B", s), "OB")
    ufy.union(("T", n), "OT")
    # quadrangle contacts: W|N, W|S, S|E, N|E are vertical
    vertical_pairs = [(w, n), (w, s), (s, e), (n, e)]
    horizontal_pairs = []
    for a, b in vertical_pairs:
        ufx.union(("R", a), ("L", b))
    for edge, (label, head) in labels.items():
        tail = edge[0] if edge[1] == head else edge[1]
        if label == 2:
            ufx.union(("R", tail), ("L", head))
            vertical_pairs.append((tail, head))
        else:
            ufy.union(("T", tail), ("B", head))
            horizontal_pairs.append((tail, head))

    xnodes = {ufx.find(k) for v in g.vertices for k in (("L", v), ("R", v))}
    xnodes |= {ufx.find("OL"), ufx.find("OR")}
    xedges = [(L(v), R(v)) for v in g.vertices]
    # a horizontal contact also forces positive x-overlap of the two rects
    for a, b in horizontal_pairs:
        xedges.append((L(a), R(b)))
        xedges.append((L(b), R(a)))
    xdist = _longest_paths(xnodes, xedges, ufx.find("OL"))

    ynodes = {ufy.find(k) for v in g.vertices for k in (("B", v), ("T", v))}
    ynodes |= {ufy.find("OB"), ufy.find("OT")}
    yedges = [(B(v), T(v)) for v in g.vertices]
    # a vertical contact forces positive y-overlap of the two rects
    for a, b in vertical_pairs:
        yedges.append((B(a), T(b)))
        yedges.append((B(b), T(a)))
    ydist = _longest_paths(ynodes, yedges, ufy.find("OB"))

    rects = {
        v: Rect(xdist[L(v)], ydist[B(v)], xdist[R(v)], ydist[T(v)]) for v in g.vertices
    }
    frame = Rect(0, 0, xdist[ufx.find("OR")], ydist[ufy.find("OT")])
    return RectDual(rects=rects, frame=frame)


def rectangular_dual(nst: NstInput) -> RectDual:
    """Tiling with touching rectangles realizing exactly the NST's edges.

    The four corners map to the frame sides (west/east full-height, north/
    south spanning the middle).  When the west-east diagonal is present the
    computation runs on rotated corner roles and the coordinates are rotated
    back, since that diagonal forces the other frame convention.
    """
    validate_nst(nst)
    w, s, e, n = nst.corners
    if nst.graph.has_edge(w, e):
        rotated = NstInput(nst.graph, nst.embedding, (s, e, n, w))
        dual = rectangular_dual(rotated)
        ymax = dual.frame.y2
        rects = {
            v: Rect(ymax - r.y2, r.x1, ymax - r.y1, r.x2) for v, r in dual.rects.items()
        }
        return RectDual(rects=rects, frame=Rect(0, 0, ymax, dual.frame.x2))
    labels = _RelSolver(nst).solve()
    return _compact(nst, labels)


# ---------------------------------------------------------------------------
# t segments via cut-and-stretch
# ---------------------------------------------------------------------------


def _top_touchers(rects, v):
    rv = rects[v]
    out = []
    for u, ru in rects.items():
        if u != v and ru.y1 == rv.y2 and min(ru.x2, rv.x2) - max(ru.x1, rv.x1) > 0:
            out.append(u)
    return out


def _bottom_touchers(rects, v):
    rv = rects[v]
    out = []
    for u, ru in rects.items():
        if u != v and ru.y2 == rv.y1 and min(ru.x2, rv.x2) - max(ru.x1, rv.x1) > 0:
            out.append(u)
    return out


def _avoiding(lo, hi, forbidden):
    """A point strictly inside (lo, hi) avoiding the forbidden values."""
    pts = sorted({lo, hi} | {f for f in forbidden if lo < f < hi})
    best_gap = max(range(len(pts) - 1), key=lambda i: pts[i + 1] - pts[i])
    return Fraction(pts[best_gap] + pts[best_gap + 1], 2)


def _apply_cut(rects, tvals, frame, x_lo, x_hi, y_jog, through, gap):
    """Insert a width-`gap` column along a vertical monotone cut.

    The cut runs at x_lo below y_jog and x_hi above; the jog lies strictly
    inside rectangle `through`, the only rectangle straddling it.  Points
    right of the cut shift, rectangles crossing it widen.
    """
    new = {}
    for u, r in rects.items():
        if u == through:
            new[u] = Rect(r.x1, r.y1, r.x2 + gap, r.y2)
            continue
        c = x_lo if r.y2 <= y_jog else x_hi
        if r.y1 < y_jog < r.y2 and not (r.x2 <= min(x_lo, x_hi) or r.x1 >= max(x_lo, x_hi)):
            # can only be the cut rectangle itself
            raise InvariantBroken("cut jog crosses a foreign rectangle")
        if r.x1 >= c:
            new[u] = Rect(r.x1 + gap, r.y1, r.x2 + gap, r.y2)
        elif r.x2 > c:
            new[u] = Rect(r.x1, r.y1, r.x2 + gap, r.y2)
        else:
            new[u] = r
    newt = {}
    for u, t in tvals.items():
        r = rects[u]
        c = x_lo if r.y2 <= y_jog else x_hi
        newt[u] = t + gap if t > c else t
    return new, newt, Rect(frame.x1, frame.y1, frame.x2 + gap, frame.y2)


def add_t_segments(dual: RectDual) -> RectDual:
    """Place the vertical segments t_v so that t_v lies right of t_w for
    every rectangle w touching the top side of R(v).

    Rectangles are processed top-down; when the required interval is empty
    the plane is cut along a vertical monotone polyline through the blocking
    contact and pulled apart, preserving the contact relation exactly.
    """
    rects = {v: Rect(Fraction(r.x1), Fraction(r.y1), Fraction(r.x2), Fraction(r.y2))
             for v, r in dual.rects.items()}
    frame = Rect(Fraction(dual.frame.x1), Fraction(dual.frame.y1),
                 Fraction(dual.frame.x2), Fraction(dual.frame.y2))
    tvals: Dict[int, Fraction] = {}

    order = sorted(rects, key=lambda v: (-rects[v].y2, v))
    for v in order:
        rv = rects[v]
        tops = _top_touchers(rects, v)
        bots = _bottom_touchers(rects, v)
        lb = rv.x1
        binder = None
        for u in tops:
            if tvals[u] > lb:
                lb, binder = tvals[u], u
        if bots:
            # keep t_v inside the leftmost bottom contact so that it can
            # never block a rectangle below v other than that contact's
            bl = min(bots, key=lambda u: max(rects[u].x1, rv.x1))
            cv = min(rects[bl].x2, rv.x2)
        else:
            cv = rv.x2
        hi = min(cv, rv.x2)
        if lb >= hi:
            if binder is None:
                raise InvariantBroken("t interval empty without a blocking contact")
            rb = rects[binder]
            contact_hi = min(rb.x2, rv.x2)
            if not (tvals[binder] < contact_hi):
                raise InvariantBroken("blocking t outside the shared contact")
            forbidden = {r.x1 for r in rects.values()} | {r.x2 for r in rects.values()} | set(tvals.values())
            x_hi = _avoiding(tvals[binder], contact_hi, forbidden)
            lo_end = max(rects[bl].x1, rv.x1) if bots else rv.x1
            hi_end = min(rects[bl].x2, rv.x2) if bots else rv.x2
            x_lo = _avoiding(lo_end, hi_end, forbidden)
            y_jog = Fraction(rv.y1 + rv.y2, 2)
            gap = lb - hi + 1
            rects, tvals, frame = _apply_cut(rects, tvals, frame, x_lo, x_hi, y_jog, v, gap)
            rv = rects[v]
            lb = rv.x1
            for u in _top_touchers(rects, v):
                lb = max(lb, tvals[u])
            if bots:
                bl2 = min(_bottom_touchers(rects, v), key=lambda u: max(rects[u].x1, rv.x1))
                hi = min(min(rects[bl2].x2, rv.x2), rv.x2)
            else:
                hi = rv.x2
            if lb >= hi:
                raise InvariantBroken("cut failed to open a t interval")
        tvals[v] = Fraction(lb + hi, 2)

    # rank-compress every coordinate back to small integers
    xs = sorted({r.x1 for r in rects.values()} | {r.x2 for r in rects.values()}
                | set(tvals.values()) | {frame.x1, frame.x2})
    ys = sorted({r.y1 for r in rects.values()} | {r.y2 for r in rects.values()}
                | {frame.y1, frame.y2})
    xr = {x: i for i, x in enumerate(xs)}
    yr = {y: i for i, y in enumerate(ys)}
    out_rects = {v: Rect(xr[r.x1], yr[r.y1], xr[r.x2], yr[r.y2]) for v, r in rects.items()}
    out_frame = Rect(xr[frame.x1], yr[frame.y1], xr[frame.x2], yr[frame.y2])
    out_t = {v: xr[t] for v, t in tvals.items()}
    return RectDual(rects=out_rects, frame=out_frame, t=out_t)


# ---------------------------------------------------------------------------
# checker
# ---------------------------------------------------------------------------


@dataclass
class RectDualReport:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def add(self, msg):
        self.violations.append(msg)
        self.ok = False


def check_rect_dual(dual: RectDual, nst: Optional[NstInput] = None) -> RectDualReport:
    """Validate tiling, positive-length contacts, contact == edge, and the
    t-ordering condition, all in exact integer arithmetic."""
    rep = RectDualReport(ok=True)
    rects = dual.rects
    fr = dual.frame
    area = 0
    for v, r in rects.items():
        if not (fr.x1 <= r.x1 < r.x2 <= fr.x2 and fr.y1 <= r.y1 < r.y2 <= fr.y2):
            rep.add("rect %r outside frame" % v)
        area += r.area()
    if area != fr.area():
        rep.add("tiling gap or overlap: area sum %s != frame %s" % (area, fr.area()))

    contacts = set()
    items = sorted(rects.items())
    for i in range(len(items)):
        v, rv = items[i]
        for j in range(i + 1, len(items)):
            u, ru = items[j]
            ox = min(rv.x2, ru.x2) - max(rv.x1, ru.x1)
            oy = min(rv.y2, ru.y2) - max(rv.y1, ru.y1)
            if ox > 0 and oy > 0:
                rep.add("rectangles %r and %r overlap" % (v, u))
            elif ox == 0 and oy == 0:
                rep.add("zero-length (point) contact between %r and %r" % (v, u))
            elif (ox == 0 and oy > 0) or (oy == 0 and ox > 0):
                contacts.add((v, u))
    if nst is not None:
        want = set(nst.graph.edges)
        for pair in contacts - want:
            rep.add("contact without edge: %r" % (pair,))
        for pair in want - contacts:
            rep.add("edge without contact: %r" % (pair,))

    if dual.t:
        for v, r in rects.items():
            tv = dual.t.get(v)
            if tv is None:
                rep.add("missing t for %r" % v)
                continue
            if not (r.x1 < tv < r.x2):
                rep.add("t of %r not strictly inside its x-span" % v)
        for v, rv in rects.items():
            for u, ru in rects.items():
                # u touches the top side of v: t_v must lie right of t_u
                if u == v or ru.y1 != rv.y2:
                    continue
                if min(ru.x2, rv.x2) - max(ru.x1, rv.x1) > 0:
                    if not dual.t[v] > dual.t[u]:
                        rep.add("t(%r) not right of t(%r) touching its top" % (v, u))
    return rep
