"""Graphs, plane embeddings and the combinatorial primitives behind the
builders: face traversal, stellation to a triangulation, separating-triangle
detection with interiors, extraction of 4-connected pieces, and construction
sequences for treewidth-2 and plane-3-tree inputs.

Embeddings are rotation systems.  The face to the *left* of a directed edge
(u, v) is the one traced by the rule  next(u -> v) = (v, w)  where w follows
u in the cyclic neighbor order at v.  All side/interior bookkeeping in this
module is phrased in terms of that convention.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .errors import (
    EmptyInterior,
    NonPlanar,
    NotPlane3Tree,
    NotTriangulation,
    TreewidthExceeded,
)

Triple = Tuple[int, int, int]


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------


class Graph:
    """Simple undirected graph over integer vertex ids."""

    __slots__ = ("vertices", "edges", "adjacency")

    def __init__(self, vertices: Iterable[int], edges: Iterable[Tuple[int, int]]):
        vs = sorted(set(int(v) for v in vertices))
        vset = set(vs)
        adj: Dict[int, Set[int]] = {v: set() for v in vs}
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError("loops are not allowed: (%d, %d)" % (u, v))
            if u not in vset or v not in vset:
                raise ValueError("edge endpoint outside vertex set: (%d, %d)" % (u, v))
            es.add((min(u, v), max(u, v)))
            adj[u].add(v)
            adj[v].add(u)
        self.vertices: Tuple[int, ...] = tuple(vs)
        self.edges: FrozenSet[Tuple[int, int]] = frozenset(es)
        self.adjacency: Dict[int, FrozenSet[int]] = {v: frozenset(a) for v, a in adj.items()}

    @classmethod
    def from_n(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        return cls(range(n), edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        ks = set(keep)
        return Graph(ks, [e for e in self.edges if e[0] in ks and e[1] in ks])

    def with_extra(self, vertices=(), edges=()) -> "Graph":
        return Graph(list(self.vertices) + list(vertices), list(self.edges) + list(edges))

    def connected_components(self) -> List[Set[int]]:
        seen: Set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def to_nx(self) -> "nx.Graph":
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __repr__(self):
        return "Graph(n=%d, m=%d)" % (self.n, self.m)


# --- I/O -------------------------------------------------------------------


def parse_graph_text(text: str) -> Graph:
    """Edge-list form: one ``u v`` pair per line, 0-based ids, ``#`` comments."""
    edges = []
    max_id = -1
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError("expected 'u v' on each line, got %r" % raw)
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        max_id = max(max_id, u, v)
    return Graph.from_n(max_id + 1, edges)


def graph_to_text(g: Graph) -> str:
    return "\n".join("%d %d" % e for e in sorted(g.edges)) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": sorted(list(e) for e in g.edges)}


def parse_graph_json(obj: dict) -> Graph:
    return Graph.from_n(int(obj["n"]), [tuple(e) for e in obj["edges"]])


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_graph_json(json.loads(text))
    return parse_graph_text(text)


# ---------------------------------------------------------------------------
# Plane embeddings
# ---------------------------------------------------------------------------


def _canon_walk(walk: Tuple[int, ...]) -> Tuple[int, ...]:
    """Minimal rotation of a closed walk; orientation is preserved."""
    best = None
    n = len(walk)
    for i in range(n):
        cand = walk[i:] + walk[:i]
        if best is None or cand < best:
            best = cand
    return best


class PlaneEmbedding:
    """Rotation system plus a designated outer face.

    ``rotation[v]`` is the cyclic order of v's neighbors.  Faces are traced
    with next(u -> v) = (v, successor of u around v); every directed edge
    lies on exactly one face walk.
    """

    def __init__(
        self,
        graph: Graph,
        rotation: Dict[int, Sequence[int]],
        outer_face: Optional[Tuple[int, ...]] = None,
    ):
        self.graph = graph
        self.rotation: Dict[int, Tuple[int, ...]] = {}
        for v in graph.vertices:
            rot = tuple(rotation.get(v, ()))
            if set(rot) != set(graph.adjacency[v]) or len(rot) != len(graph.adjacency[v]):
                raise ValueError("rotation at %d does not match adjacency" % v)
            self.rotation[v] = rot
        self._pos = {
            v: {u: i for i, u in enumerate(rot)} for v, rot in self.rotation.items()
        }
        self._faces: Optional[List[Tuple[int, ...]]] = None
        self._face_of: Optional[Dict[Tuple[int, int], int]] = None
        self._requested_outer = _canon_walk(tuple(outer_face)) if outer_face else None
        self._outer_index: Optional[int] = None
        self._decomposition = None  # cache for piece extraction

    # -- faces ---------------------------------------------------------

    def _next(self, u: int, v: int) -> Tuple[int, int]:
        rot = self.rotation[v]
        i = self._pos[v][u]
        return v, rot[(i + 1) % len(rot)]

    def faces(self) -> List[Tuple[int, ...]]:
        """All face walks, as vertex tuples (closed; last edge wraps around)."""
        if self._faces is not None:
            return self._faces
        faces: List[Tuple[int, ...]] = []
        face_of: Dict[Tuple[int, int], int] = {}
        for v0 in self.graph.vertices:
            for u0 in self.rotation[v0]:
                if (v0, u0) in face_of:
                    continue
                walk = []
                e = (v0, u0)
                while e not in face_of:
                    face_of[e] = len(faces)
                    walk.append(e[0])
                    e = self._next(*e)
                faces.append(tuple(walk))
        if not faces and self.graph.n == 1:
            faces = [tuple(self.graph.vertices)]
        self._faces = faces
        self._face_of = face_of
        self._resolve_outer()
        return faces

    def face_of(self, u: int, v: int) -> int:
        """Index of the face to the left of directed edge (u, v)."""
        self.faces()
        return self._face_of[(u, v)]

    def _resolve_outer(self):
        keys = [_canon_walk(w) for w in self._faces]
        if self._requested_outer is not None:
            for i, k in enumerate(keys):
                if k == self._requested_outer:
                    self._outer_index = i
                    return
            raise ValueError("designated outer face %r is not a face" % (self._requested_outer,))
        self._outer_index = min(range(len(keys)), key=lambda i: (-len(keys[i]), keys[i]))

    @property
    def outer_face_index(self) -> int:
        self.faces()
        return self._outer_index

    @property
    def outer_face(self) -> Tuple[int, ...]:
        return self.faces()[self.outer_face_index]

    def euler_ok(self) -> bool:
        g = self.graph
        if not g.is_connected():
            return False
        return g.n - g.m + len(self.faces()) == 2

    def face_count(self) -> int:
        return len(self.faces())

    def is_triangulation(self) -> bool:
        fs = self.faces()
        return all(len(f) == 3 and len(set(f)) == 3 for f in fs) and self.graph.n >= 3

    def triangle_faces(self) -> Set[FrozenSet[int]]:
        return {frozenset(f) for f in self.faces() if len(f) == 3 and len(set(f)) == 3}

    def with_outer(self, walk: Tuple[int, ...]) -> "PlaneEmbedding":
        return PlaneEmbedding(self.graph, self.rotation, outer_face=walk)


def faces_of(e: PlaneEmbedding) -> List[Tuple[int, ...]]:
    """All face walks of the embedding (each edge used twice over all walks)."""
    return e.faces()


def compute_planar_embedding(g: Graph) -> PlaneEmbedding:
    """Plane embedding of a connected planar graph.

    Backed by networkx's LR planarity test; the result is validated
    structurally (Euler count), not by algorithm identity.  Raises
    NonPlanar with a Kuratowski-subdivision edge set otherwise.
    """
    if g.n == 0:
        raise ValueError("empty graph has no embedding")
    if not g.is_connected():
        raise ValueError("graph must be connected; join components first")
    ok, cert = nx.check_planarity(g.to_nx(), counterexample=True)
    if not ok:
        raise NonPlanar(certificate=frozenset(frozenset(e) for e in cert.edges()))
    rotation = {v: tuple(cert.neighbors_cw_order(v)) for v in g.vertices}
    emb = PlaneEmbedding(g, rotation)
    if g.m > 0 and not emb.euler_ok():
        raise AssertionError("embedding failed the Euler check")  # pragma: no cover
    return emb


def add_connecting_edges(g: Graph):
    """Join components with recorded bridge edges and embed the result.

    Returns (graph, embedding, added_edges).  Added edges are later masked
    out by the verifier via ignore_pairs.
    """
    comps = sorted(g.connected_components(), key=min)
    added = []
    if len(comps) > 1:
        reps = [min(c) for c in comps]
        added = [(reps[i], reps[i + 1]) for i in range(len(reps) - 1)]
    g2 = g.with_extra(edges=added) if added else g
    emb = compute_planar_embedding(g2) if g2.n else None
    return g2, emb, added


# ---------------------------------------------------------------------------
# Stellation
# ---------------------------------------------------------------------------


def _stellate_once(emb: PlaneEmbedding, only_nontriangle: bool):
    g = emb.graph
    faces = emb.faces()
    next_id = max(g.vertices) + 1
    rot = {v: list(r) for v, r in emb.rotation.items()}
    new_vertices = []
    hub_of_face = {}

    for fi, walk in enumerate(faces):
        if only_nontriangle and len(walk) == 3 and len(set(walk)) == 3:
            continue
        hub = next_id
        next_id += 1
        new_vertices.append(hub)
        hub_of_face[fi] = hub
        seen = set()
        hub_rot = []
        L = len(walk)
        for i, at in enumerate(walk):
            if at in seen:
                continue
            seen.add(at)
            hub_rot.append(at)
            prev = walk[(i - 1) % L]
            # split the face corner (prev -> at -> next) with the hub edge
            j = rot[at].index(prev)
            rot[at].insert(j + 1, hub)
        rot[hub] = list(reversed(hub_rot))

    g2 = Graph(
        list(g.vertices) + new_vertices,
        list(g.edges) + [(h, u) for h in new_vertices for u in rot[h]],
    )
    emb2 = PlaneEmbedding(g2, rot)
    return emb2, new_vertices, hub_of_face


def stellate_to_triangulation(emb: PlaneEmbedding):
    """Add a vertex inside each non-triangular face until every face is a
    triangle.

    The new vertex of a face is joined once to each distinct boundary
    vertex; faces with repeated boundary vertices may need further rounds,
    and the iteration terminates because repeats die out.  Returns
    (embedding, added_vertex_set); the input graph is the induced subgraph
    of the result on its original vertices.
    """
    g = emb.graph
    if g.n < 2:
        raise ValueError("stellation needs at least one edge; pad tiny inputs first")
    if emb.is_triangulation():
        return emb, set()
    added: Set[int] = set()
    cur = emb
    rounds = 0
    while not cur.is_triangulation():
        rounds += 1
        if rounds > 64:
            raise AssertionError("stellation failed to terminate")  # pragma: no cover
        outer_walk = cur.outer_face
        cur, new_vs, _ = _stellate_once(cur, only_nontriangle=True)
        added.update(new_vs)
        if len(outer_walk) == 3 and len(set(outer_walk)) == 3:
            cur = cur.with_outer(outer_walk)
        else:
            # the outer face was subdivided: its first boundary edge now
            # borders a wedge triangle, which becomes the outer face
            u, v = outer_walk[0], outer_walk[1]
            idx = cur.face_of(u, v)
            cur = cur.with_outer(cur.faces()[idx])
    return cur, added


# ---------------------------------------------------------------------------
# Separating triangles and 4-connected pieces
# ---------------------------------------------------------------------------


@dataclass
class SeparatingTriangleSet:
    triangles: List[Triple]
    interior: Dict[Triple, FrozenSet[int]]


def _all_triangles(g: Graph) -> List[Triple]:
    """Enumerate 3-cycles via a min-degree (degeneracy) orientation."""
    deg = {v: g.degree(v) for v in g.vertices}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed: Set[int] = set()
    pos: Dict[int, int] = {}
    live_deg = dict(deg)
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != live_deg[v]:
            continue
        pos[v] = len(removed)
        removed.add(v)
        for u in g.adjacency[v]:
            if u not in removed:
                live_deg[u] -= 1
                heapq.heappush(heap, (live_deg[u], u))
    out: List[Triple] = []
    for v in g.vertices:
        outn = sorted(u for u in g.adjacency[v] if pos[u] > pos[v])
        for i in range(len(outn)):
            for j in range(i + 1, len(outn)):
                a, b = outn[i], outn[j]
                if b in g.adjacency[a]:
                    out.append(tuple(sorted((v, a, b))))
    return out


def _interior_faces_of_triangle(emb: PlaneEmbedding, tri: Triple) -> Set[int]:
    """Faces strictly inside the 3-cycle, by two-sided simultaneous flood.

    The flood never crosses the triangle's own edges; whichever side the
    outer face lies on is the exterior.
    """
    a, b, c = tri
    blocked = {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))}
    seed_l = {emb.face_of(a, b), emb.face_of(b, c), emb.face_of(c, a)}
    seed_r = {emb.face_of(b, a), emb.face_of(c, b), emb.face_of(a, c)}
    faces = emb.faces()
    outer = emb.outer_face_index

    def expand(frontier, seen):
        new = []
        for fi in frontier:
            walk = faces[fi]
            L = len(walk)
            for i in range(L):
                u, v = walk[i], walk[(i + 1) % L]
                if frozenset((u, v)) in blocked:
                    continue
                nf = emb.face_of(v, u)
                if nf not in seen:
                    seen.add(nf)
                    new.append(nf)
        return new

    seen_l, seen_r = set(seed_l), set(seed_r)
    frontier_l, frontier_r = list(seed_l), list(seed_r)
    while frontier_l and frontier_r:
        frontier_l = expand(frontier_l, seen_l)
        frontier_r = expand(frontier_r, seen_r)
    if not frontier_l:
        side, other_seen, other_frontier = seen_l, seen_r, frontier_r
    else:
        side, other_seen, other_frontier = seen_r, seen_l, frontier_l
    if outer not in side:
        return side
    # finish flooding the other side; it is the interior
    while other_frontier:
        other_frontier = expand(other_frontier, other_seen)
    return other_seen


def find_separating_triangles(emb: PlaneEmbedding) -> SeparatingTriangleSet:
    """All 3-cycles of a plane triangulation that are not faces, with the
    vertex sets strictly inside them."""
    if not emb.is_triangulation():
        raise NotTriangulation("input must be a plane triangulation")
    g = emb.graph
    face_keys = emb.triangle_faces()
    seps = [t for t in _all_triangles(g) if frozenset(t) not in face_keys]
    interior: Dict[Triple, FrozenSet[int]] = {}
    faces = emb.faces()
    for t in seps:
        inside = _interior_faces_of_triangle(emb, t)
        verts = set()
        for fi in inside:
            verts.update(faces[fi])
        interior[t] = frozenset(verts - set(t))
    return SeparatingTriangleSet(triangles=seps, interior=interior)


class TriangulationDecomposition:
    """Nesting forest of separating triangles of a plane triangulation.

    The root is the outer triangle; each node's piece is the 4-connected
    triangulated subgraph spanned between it and its children.
    """

    def __init__(self, emb: PlaneEmbedding):
        if not emb.is_triangulation():
            raise NotTriangulation("decomposition needs a plane triangulation")
        self.emb = emb
        self.sep = find_separating_triangles(emb)
        outer = tuple(sorted(emb.outer_face))
        self.root: Triple = outer
        all_v = set(emb.graph.vertices)
        self._interior: Dict[Triple, FrozenSet[int]] = dict(self.sep.interior)
        self._interior[outer] = frozenset(all_v - set(outer))
        self.children: Dict[Triple, List[Triple]] = {t: [] for t in self._interior}
        self.parent: Dict[Triple, Optional[Triple]] = {}

        by_vertex: Dict[int, List[Triple]] = {}
        for t in self.sep.triangles:
            for v in self._interior[t]:
                by_vertex.setdefault(v, []).append(t)
        for t in sorted(self.sep.triangles, key=lambda t: len(self._interior[t])):
            if t == outer:
                continue
            if not self._interior[t]:
                # cannot happen in a triangulation: a separating triangle
                # always has interior vertices
                raise AssertionError("separating triangle with empty interior")
            rep = next(iter(self._interior[t]))
            best = None
            for cand in by_vertex.get(rep, []) + [outer]:
                if cand == t:
                    continue
                if len(self._interior[cand]) > len(self._interior[t]) and rep in self._interior[cand]:
                    if best is None or len(self._interior[cand]) < len(self._interior[best]):
                        best = cand
            self.parent[t] = best
            self.children[best].append(t)
        for t in self.children:
            self.children[t].sort()

    def interior(self, delta: Triple) -> FrozenSet[int]:
        return self._interior[tuple(sorted(delta))]

    def piece_vertices(self, delta: Triple) -> Set[int]:
        delta = tuple(sorted(delta))
        verts = set(delta) | set(self._interior[delta])
        for ch in self.children[delta]:
            verts -= set(self._interior[ch])
        return verts

    def piece_embedding(self, delta: Triple) -> PlaneEmbedding:
        delta = tuple(sorted(delta))
        keep = self.piece_vertices(delta)
        g = self.emb.graph
        rot = {v: tuple(u for u in self.emb.rotation[v] if u in keep) for v in keep}
        sub = Graph(keep, [e for e in g.edges if e[0] in keep and e[1] in keep])
        emb = PlaneEmbedding(sub, rot)
        outer_idx = None
        for i, w in enumerate(emb.faces()):
            if len(w) == 3 and frozenset(w) == frozenset(delta):
                outer_idx = i
                break
        if outer_idx is None:
            raise AssertionError("piece lost its boundary triangle")  # pragma: no cover
        return emb.with_outer(emb.faces()[outer_idx])


def decomposition_of(emb: PlaneEmbedding) -> TriangulationDecomposition:
    """Cached TriangulationDecomposition for the embedding."""
    if emb._decomposition is None:
        emb._decomposition = TriangulationDecomposition(emb)
    return emb._decomposition


def extract_four_connected_piece(emb: PlaneEmbedding, delta: Triple) -> PlaneEmbedding:
    """The 4-connected triangulated subgraph hanging below ``delta``.

    delta must be the outer triangle or a separating triangle; everything
    outside it and everything inside separating triangles nested in it is
    removed.  The returned embedding has delta as its outer face.
    """
    dec = decomposition_of(emb)
    key = tuple(sorted(delta))
    if key not in dec._interior:
        raise ValueError("%r is neither the outer triangle nor separating" % (delta,))
    if not dec.interior(key):
        raise EmptyInterior("no vertex lies inside %r" % (delta,))
    return dec.piece_embedding(key)


# ---------------------------------------------------------------------------
# Construction sequences
# ---------------------------------------------------------------------------


@dataclass
class ConstructionSequence:
    """Order in which a k-tree host is grown, with per-vertex attach cliques.

    ``attach[v]`` lists the host-clique vertices v is stacked onto (shorter
    for the first k+1 base vertices).  ``present[v]`` is the subset of
    attach[v] to which v is joined in the represented graph itself.
    """

    k: int
    order: List[int]
    attach: Dict[int, Tuple[int, ...]]
    present: Dict[int, FrozenSet[int]]

    def with_target(self, g: Graph) -> "ConstructionSequence":
        """Recompute the present_edges mask against a subgraph g of the host."""
        pres = {
            v: frozenset(u for u in self.attach[v] if g.has_edge(u, v))
            for v in self.order
        }
        return ConstructionSequence(self.k, list(self.order), dict(self.attach), pres)

    def host_graph(self) -> Graph:
        edges = []
        for v in self.order:
            for u in self.attach[v]:
                edges.append((u, v))
        return Graph(self.order, edges)


def tw2_sequence(g: Graph) -> ConstructionSequence:
    """Reduce by repeatedly deleting a vertex of degree <= 2 (filling in the
    missing edge between the two neighbors of a degree-2 vertex); the
    reversed order is a 2-tree construction sequence whose 2-tree contains g.

    Raises TreewidthExceeded when the reduction stalls.
    """
    adj: Dict[int, Set[int]] = {v: set(g.adjacency[v]) for v in g.vertices}
    alive: Set[int] = set(g.vertices)
    heap: List[int] = [v for v in g.vertices if len(adj[v]) <= 2]
    heapq.heapify(heap)
    removed_order: List[Tuple[int, Tuple[int, ...]]] = []

    while len(alive) > 2:
        v = None
        while heap:
            cand = heapq.heappop(heap)
            if cand in alive and len(adj[cand]) <= 2:
                v = cand
                break
        if v is None:
            raise TreewidthExceeded("degree-2 reduction stalled; treewidth exceeds 2")
        nbrs = sorted(adj[v])
        if len(nbrs) == 2:
            a, b = nbrs
        elif len(nbrs) == 1:
            # complete the attach pair with a neighbor of a when possible; a
            # cross-component fill never raises the treewidth
            a = nbrs[0]
            near = sorted(w for w in adj[a] if w != v and w in alive)
            b = near[0] if near else min(w for w in alive if w not in (v, a))
        else:
            live_edges = sorted(
                (x, y) for x in alive for y in adj[x] if x < y and y in alive and x != v and y != v
            )
            if live_edges:
                a, b = live_edges[0]
            else:
                a, b = sorted(w for w in alive if w != v)[:2]
        # record the host fill in the reduction graph so later removals of a
        # or b carry the pair into their own attach sets
        if b not in adj[a]:
            adj[a].add(b)
            adj[b].add(a)
        alive.discard(v)
        for u in adj[v]:
            adj[u].discard(v)
            if u in alive and len(adj[u]) <= 2:
                heapq.heappush(heap, u)
        adj[v] = set()
        removed_order.append((v, (a, b)))

    base = sorted(alive)
    order = list(base) + [v for v, _ in reversed(removed_order)]
    attach: Dict[int, Tuple[int, ...]] = {}
    for i, v in enumerate(base):
        attach[v] = tuple(base[:i])
    for v, pair in removed_order:
        attach[v] = pair
    seq = ConstructionSequence(2, order, attach, {})
    return seq.with_target(g)


def apollonian_sequence(g: Graph, emb: Optional[PlaneEmbedding] = None) -> ConstructionSequence:
    """Peel degree-3 vertices with triangle neighborhoods; the reversed
    order is a plane-3-tree construction sequence whose attach triangles
    each bound an inner face at insertion time, used at most once.

    Only vertices off the outer face are peeled: an Apollonian network has,
    at every stage, a simplicial vertex avoiding any fixed face (Dirac),
    while peeling an outer vertex could force a later stack into the outer
    region.  Raises NotPlane3Tree when peeling stalls.
    """
    if g.n < 3:
        raise NotPlane3Tree("a plane 3-tree has at least 3 vertices")
    if emb is None:
        try:
            emb = compute_planar_embedding(g)
        except (NonPlanar, ValueError) as exc:
            raise NotPlane3Tree("no usable plane embedding: %s" % exc)
    outer = set(emb.outer_face)
    if len(emb.outer_face) != 3 or len(outer) != 3:
        raise NotPlane3Tree("outer face of a plane 3-tree must be a triangle")

    adj: Dict[int, Set[int]] = {v: set(g.adjacency[v]) for v in g.vertices}
    alive: Set[int] = set(g.vertices)
    removed: List[Tuple[int, Triple]] = []

    def peelable(v):
        if v in outer or len(adj[v]) != 3:
            return False
        a, b, c = sorted(adj[v])
        return b in adj[a] and c in adj[a] and c in adj[b]

    heap = [v for v in g.vertices if peelable(v)]
    heapq.heapify(heap)
    while len(alive) > 3:
        v = None
        while heap:
            cand = heapq.heappop(heap)
            if cand in alive and peelable(cand):
                v = cand
                break
        if v is None:
            raise NotPlane3Tree("degree-3 peeling stalled; not a plane 3-tree")
        tri = tuple(sorted(adj[v]))
        alive.discard(v)
        for u in adj[v]:
            adj[u].discard(v)
            if u in alive and peelable(u):
                heapq.heappush(heap, u)
        adj[v] = set()
        removed.append((v, tri))
    base = sorted(alive)
    if set(base) != outer:
        raise NotPlane3Tree("peeling did not end at the outer triangle")

    order = list(base) + [v for v, _ in reversed(removed)]
    attach: Dict[int, Tuple[int, ...]] = {
        base[0]: (),
        base[1]: (base[0],),
        base[2]: (base[0], base[1]),
    }
    for v, tri in removed:
        attach[v] = tri

    # replay with face tracking: every attach triple must be an unused face
    available = {frozenset(base)}
    for v in order[3:]:
        t = frozenset(attach[v])
        if t not in available:
            raise AssertionError("attach triangle %r unavailable" % (sorted(t),))
        available.discard(t)
        a, b, c = attach[v]
        available.update({frozenset((a, b, v)), frozenset((a, c, v)), frozenset((b, c, v))})

    seq = ConstructionSequence(3, order, attach, {})
    return seq.with_target(g)
