"""Interval graph recognition and 0-bend representations.

The 0-bend graphs are exactly the interval graphs, so the dispatcher needs a
recognizer and a realizer.  Recognition goes through the classical
characterization (chordal and asteroidal-triple-free), checked at desk
scale; an independent brute-force oracle searches for a consecutive
arrangement of the maximal cliques and doubles as the realizer.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import networkx as nx

from .epg import EpgRepresentation, GridPath
from .errors import NotInterval
from .graphs import Graph


def _mcs_order(g: Graph) -> List[int]:
    """Maximum cardinality search order (last-to-first elimination)."""
    weight = {v: 0 for v in g.vertices}
    seen = set()
    order = []
    for _ in range(g.n):
        v = max((w for w in g.vertices if w not in seen), key=lambda w: (weight[w], -w))
        order.append(v)
        seen.add(v)
        for u in g.adjacency[v]:
            if u not in seen:
                weight[u] += 1
    return order


def is_chordal(g: Graph) -> bool:
    order = _mcs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    # reversed MCS order is a perfect elimination order iff chordal
    for v in order:
        earlier = [u for u in g.adjacency[v] if pos[u] < pos[v]]
        if not earlier:
            continue
        u = max(earlier, key=lambda w: pos[w])
        for w in earlier:
            if w != u and w not in g.adjacency[u]:
                return False
    return True


def has_asteroidal_triple(g: Graph) -> bool:
    """O(n^3) check: three pairwise non-adjacent vertices such that each
    pair is joined by a path avoiding the closed neighborhood of the third."""
    vs = list(g.vertices)
    n = len(vs)
    comp: Dict[int, Dict[int, int]] = {}
    for v in vs:
        labels = {}
        cid = 0
        banned = set(g.adjacency[v]) | {v}
        for s in vs:
            if s in banned or s in labels:
                continue
            stack = [s]
            labels[s] = cid
            while stack:
                u = stack.pop()
                for w in g.adjacency[u]:
                    if w not in banned and w not in labels:
                        labels[w] = cid
                        stack.append(w)
            cid += 1
        comp[v] = labels
    for i in range(n):
        for j in range(i + 1, n):
            x, y = vs[i], vs[j]
            if y in g.adjacency[x]:
                continue
            for k in range(j + 1, n):
                z = vs[k]
                if z in g.adjacency[x] or z in g.adjacency[y]:
                    continue
                if (
                    comp[z].get(x) == comp[z].get(y)
                    and comp[y].get(x) == comp[y].get(z)
                    and comp[x].get(y) == comp[x].get(z)
                ):
                    return True
    return False


def is_interval_graph(g: Graph) -> bool:
    """Interval iff chordal and asteroidal-triple free."""
    if g.n == 0:
        return True
    return is_chordal(g) and not has_asteroidal_triple(g)


# ---------------------------------------------------------------------------
# brute-force oracle: consecutive clique arrangement
# ---------------------------------------------------------------------------


def maximal_cliques(g: Graph) -> List[frozenset]:
    if g.n == 0:
        return []
    return sorted(
        (frozenset(c) for c in nx.find_cliques(g.to_nx())), key=lambda c: sorted(c)
    )


def consecutive_clique_order(g: Graph) -> Optional[List[frozenset]]:
    """Search all orderings of the maximal cliques for one in which every
    vertex's cliques are consecutive; None when there is none.

    A graph is an interval graph exactly when such an order exists, so this
    doubles as an independent recognition oracle.
    """
    cliques = maximal_cliques(g)
    k = len(cliques)
    remaining = {v: 0 for v in g.vertices}
    for c in cliques:
        for v in c:
            remaining[v] += 1
    placed: List[frozenset] = []
    used = [False] * k
    open_set: set = set()

    def backtrack() -> bool:
        if len(placed) == k:
            return True
        for i in range(k):
            if used[i]:
                continue
            c = cliques[i]
            if not open_set <= c:
                continue
            used[i] = True
            placed.append(c)
            opened, closed = [], []
            for v in c:
                remaining[v] -= 1
                if v in open_set:
                    if remaining[v] == 0:
                        open_set.discard(v)
                        closed.append(v)
                else:
                    if remaining[v] > 0:
                        open_set.add(v)
                        opened.append(v)
            if backtrack():
                return True
            for v in opened:
                open_set.discard(v)
            for v in closed:
                open_set.add(v)
            for v in c:
                remaining[v] += 1
            placed.pop()
            used[i] = False
        return False

    if backtrack():
        return placed
    return None


def interval_oracle(g: Graph) -> bool:
    """Brute-force recognition by consecutive clique arrangement."""
    if g.n == 0:
        return True
    return consecutive_clique_order(g) is not None


def build_0bend(g: Graph) -> EpgRepresentation:
    """All-horizontal representation on one grid line; raises NotInterval."""
    if not is_interval_graph(g):
        raise NotInterval("graph is not an interval graph")
    order = consecutive_clique_order(g)
    if order is None:
        raise NotInterval("no consecutive clique arrangement found")
    first: Dict[int, int] = {}
    last: Dict[int, int] = {}
    for i, c in enumerate(order):
        for v in c:
            first.setdefault(v, i)
            last[v] = i
    paths = {
        v: GridPath([(first[v], 0), (last[v] + 1, 0)]) for v in g.vertices
    }
    return EpgRepresentation(paths)
