"""Deterministic, seedable graph generators for the test corpus.

Every family is a pure function of its spec: the same (family, params, seed)
always yields the same graph.  Families that are built by stacking also
return their construction sequence and a plane embedding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import networkx as nx

from .errors import BadParams
from .graphs import (
    ConstructionSequence,
    Graph,
    PlaneEmbedding,
    compute_planar_embedding,
)

FAMILIES = (
    "k2n",
    "apollonian",
    "platonic",
    "series_parallel",
    "interval",
    "stellated_random",
    "grid4c",
)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: Tuple[Tuple[str, object], ...] = ()
    seed: int = 0

    @classmethod
    def make(cls, family: str, seed: int = 0, **params) -> "GeneratorSpec":
        return cls(family=family, params=tuple(sorted(params.items())), seed=seed)

    def param(self, key, default=None):
        return dict(self.params).get(key, default)


@dataclass
class GenResult:
    graph: Graph
    embedding: Optional[PlaneEmbedding] = None
    sequence: Optional[ConstructionSequence] = None
    intervals: Optional[Dict[int, Tuple[float, float]]] = None


def _k2n(spec) -> GenResult:
    n = spec.param("n")
    if n is None or n < 1:
        raise BadParams("k2n requires n >= 1")
    edges = [(0, 2 + i) for i in range(n)] + [(1, 2 + i) for i in range(n)]
    return GenResult(graph=Graph.from_n(n + 2, edges))


def _triangle_embedding():
    g = Graph.from_n(3, [(0, 1), (1, 2), (0, 2)])
    rot = {0: (1, 2), 1: (2, 0), 2: (0, 1)}
    return g, rot


def _apollonian(spec) -> GenResult:
    """Random plane 3-tree: stack each new vertex into a uniformly random
    inner face of the current triangulation."""
    n = spec.param("n")
    if n is None or n < 3:
        raise BadParams("apollonian requires n >= 3")
    rnd = random.Random(spec.seed)
    g, rot = _triangle_embedding()
    rot = {v: list(r) for v, r in rot.items()}
    edges = [(0, 1), (1, 2), (0, 2)]
    # inner faces kept as directed walks of the fixed embedding
    faces = [(0, 1, 2)]
    order = [0, 1, 2]
    attach = {0: (), 1: (0,), 2: (0, 1)}
    for v in range(3, n):
        walk = faces.pop(rnd.randrange(len(faces)))
        a, b, c = walk
        for at, prev in ((a, c), (b, a), (c, b)):
            rot[at].insert(rot[at].index(prev) + 1, v)
        rot[v] = [c, b, a]
        edges.extend([(a, v), (b, v), (c, v)])
        faces.extend([(a, b, v), (b, c, v), (c, a, v)])
        order.append(v)
        attach[v] = tuple(sorted((a, b, c)))
    graph = Graph.from_n(n, edges)
    emb = PlaneEmbedding(graph, {v: tuple(r) for v, r in rot.items()}, outer_face=(0, 2, 1))
    seq = ConstructionSequence(3, order, attach, {}).with_target(graph)
    return GenResult(graph=graph, embedding=emb, sequence=seq)


_PLATONIC = {
    "tetrahedron": nx.tetrahedral_graph,
    "octahedron": nx.octahedral_graph,
    "cube": nx.hypercube_graph,  # placeholder, replaced below
    "icosahedron": nx.icosahedral_graph,
    "dodecahedron": nx.dodecahedral_graph,
}


def _platonic(spec) -> GenResult:
    name = spec.param("name")
    if name == "cube":
        gg = nx.relabel.convert_node_labels_to_integers(nx.hypercube_graph(3))
    elif name in _PLATONIC:
        gg = _PLATONIC[name]()
    else:
        raise BadParams("unknown platonic solid %r" % (name,))
    g = Graph(gg.nodes(), gg.edges())
    return GenResult(graph=g, embedding=compute_planar_embedding(g))


def _series_parallel(spec) -> GenResult:
    """Random 2-tree minus random edges: treewidth <= 2 by construction."""
    n = spec.param("n")
    drop = spec.param("drop", 0.15)
    if n is None or n < 2:
        raise BadParams("series_parallel requires n >= 2")
    rnd = random.Random(spec.seed)
    edges = [(0, 1)]
    for v in range(2, n):
        a, b = edges[rnd.randrange(len(edges))]
        edges.append((a, v))
        edges.append((b, v))
    kept = [e for e in edges if rnd.random() >= drop]
    return GenResult(graph=Graph.from_n(n, kept))


def _interval(spec) -> GenResult:
    n = spec.param("n")
    if n is None or n < 1:
        raise BadParams("interval requires n >= 1")
    rnd = random.Random(spec.seed)
    ivs = {}
    for v in range(n):
        a, b = rnd.randrange(0, 4 * n), rnd.randrange(0, 4 * n)
        ivs[v] = (min(a, b), max(a, b) + 1)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if min(ivs[u][1], ivs[v][1]) >= max(ivs[u][0], ivs[v][0])
    ]
    return GenResult(graph=Graph.from_n(n, edges), intervals=ivs)


def _stellated_random(spec) -> GenResult:
    """Random planar graph: a random triangulation with edges deleted, the
    raw material the 4-bend pipeline stellates back up."""
    n = spec.param("n")
    drop = spec.param("drop", 0.3)
    if n is None or n < 3:
        raise BadParams("stellated_random requires n >= 3")
    rnd = random.Random(spec.seed)
    base = _apollonian(GeneratorSpec.make("apollonian", seed=rnd.randrange(2**32), n=n))
    kept = [e for e in base.graph.edges if rnd.random() >= drop]
    return GenResult(graph=Graph.from_n(n, kept))


def _grid4c(spec) -> GenResult:
    """4-connected plane triangulation: a diagonally triangulated grid inside
    a 4-vertex frame, with one outer chord closing a triangular outer face."""
    rows = spec.param("rows", 3)
    cols = spec.param("cols", 3)
    if rows < 2 or cols < 2:
        raise BadParams("grid4c requires rows, cols >= 2")
    rnd = random.Random(spec.seed)

    def vid(i, j):
        return i * cols + j

    n_grid = rows * cols
    N, E, S, W = n_grid, n_grid + 1, n_grid + 2, n_grid + 3
    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 < rows:
                edges.append((vid(i, j), vid(i + 1, j)))
            if i + 1 < rows and j + 1 < cols:
                if rnd.random() < 0.5:
                    edges.append((vid(i, j), vid(i + 1, j + 1)))
                else:
                    edges.append((vid(i, j + 1), vid(i + 1, j)))
    edges += [(N, vid(0, j)) for j in range(cols)]
    edges += [(S, vid(rows - 1, j)) for j in range(cols)]
    edges += [(W, vid(i, 0)) for i in range(rows)]
    edges += [(E, vid(i, cols - 1)) for i in range(rows)]
    edges += [(N, W), (N, E), (S, W), (S, E), (N, S)]
    g = Graph.from_n(n_grid + 4, edges)
    emb = compute_planar_embedding(g)
    outer = None
    for w in emb.faces():
        if len(w) == 3 and set(w) == {N, E, S}:
            outer = w
            break
    if outer is None:  # pragma: no cover
        raise AssertionError("frame triangle missing")
    return GenResult(graph=g, embedding=emb.with_outer(outer))


_DISPATCH = {
    "k2n": _k2n,
    "apollonian": _apollonian,
    "platonic": _platonic,
    "series_parallel": _series_parallel,
    "interval": _interval,
    "stellated_random": _stellated_random,
    "grid4c": _grid4c,
}


def gen(spec: GeneratorSpec) -> GenResult:
    """Generate a graph of the requested family; reproducible from the spec."""
    if spec.family not in _DISPATCH:
        raise BadParams("unknown family %r" % (spec.family,))
    return _DISPATCH[spec.family](spec)
