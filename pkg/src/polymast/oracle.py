"""Exhaustive reference computations for small graphs.

Nothing here shares code paths with the fast implementations beyond the
:class:`~polymast.graph.Graph` container: spanning trees are enumerated by
contraction/deletion, stretches come from per-edge BFS in the tree, the
minimum cycle basis from Horton's candidate set with GF(2) elimination, and
recognition from series-parallel reduction plus chordless-cycle
enumeration.  Every routine refuses inputs above its guard instead of
running for hours.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

from .cycles import Cycle, edge_vector
from .graph import EdgeSet, Graph

MAX_TREE_EDGES = 24
MAX_CYCLES = 1 << 16


class OracleGuardError(ValueError):
    """Input too large for an exhaustive oracle."""


def _guard_edges(g: Graph, limit: int = MAX_TREE_EDGES) -> None:
    if g.m > limit:
        raise OracleGuardError(f"oracle limited to m <= {limit}, got m = {g.m}")


@dataclass
class OracleReport:
    min_total_stretch: int
    optimal_tree_count: int
    optimal_tree: EdgeSet
    mcb_size: int
    is_polygonal: bool
    spanning_tree_count: int = 0
    optimal_trees: List[Tuple[int, ...]] = field(default_factory=list, repr=False)


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _spans(n: int, pairs) -> bool:
    dsu = _DSU(n)
    comps = n
    for u, v in pairs:
        if dsu.union(u, v):
            comps -= 1
    return comps <= 1


def enumerate_spanning_trees(g: Graph) -> Iterator[EdgeSet]:
    """Every spanning tree exactly once.

    Edges are decided in id order: contract the edge (take it) when its ends
    are still in different parts, or delete it (skip it) when the edges not
    yet deleted still connect the graph.
    """
    _guard_edges(g)
    n, m = g.n, g.m
    edges = g.edges
    if n == 0:
        return
    if not _spans(n, edges):
        return

    def rec(i: int, chosen: List[int], deleted: Set[int]):
        if len(chosen) == n - 1:
            yield EdgeSet(m, chosen)
            return
        if i == m:
            return
        u, v = edges[i]
        dsu = _DSU(n)
        for e in chosen:
            dsu.union(*edges[e])
        if dsu.find(u) != dsu.find(v):
            chosen.append(i)
            yield from rec(i + 1, chosen, deleted)
            chosen.pop()
        deleted.add(i)
        if _spans(n, (edges[e] for e in range(m) if e not in deleted)):
            yield from rec(i + 1, chosen, deleted)
        deleted.discard(i)

    yield from rec(0, [], set())


def tree_path_stretch(g: Graph, tree: EdgeSet) -> int:
    """Total stretch by a BFS inside the tree from one endpoint of every edge."""
    tree_adj: Dict[int, List[int]] = {v: [] for v in range(g.n)}
    for e in tree:
        u, v = g.endpoints(e)
        tree_adj[u].append(v)
        tree_adj[v].append(u)
    total = 0
    for u, v in g.edges:
        dist = {u: 0}
        queue = deque([u])
        while v not in dist:
            x = queue.popleft()
            for y in tree_adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        total += dist[v]
    return total


def brute_force_mast(g: Graph) -> OracleReport:
    """Minimum total stretch over all spanning trees, with every optimum."""
    _guard_edges(g)
    best: Optional[int] = None
    optima: List[Tuple[int, ...]] = []
    count = 0
    for t in enumerate_spanning_trees(g):
        count += 1
        s = tree_path_stretch(g, t)
        if best is None or s < best:
            best, optima = s, [tuple(t)]
        elif s == best:
            optima.append(tuple(t))
    if best is None:
        raise ValueError("graph has no spanning tree")
    size, _ = horton_mcb(g)
    return OracleReport(
        min_total_stretch=best,
        optimal_tree_count=len(optima),
        optimal_tree=EdgeSet(g.m, optima[0]),
        mcb_size=size,
        is_polygonal=oracle_recognizer(g),
        spanning_tree_count=count,
        optimal_trees=optima,
    )


def _order_cycle(g: Graph, edge_ids) -> Cycle:
    """Arrange an edge set forming one simple cycle into walking order."""
    remaining = set(edge_ids)
    first = min(remaining)
    remaining.discard(first)
    out = [first]
    start, cur = g.endpoints(first)
    while remaining:
        nxt = next(e for e in remaining if cur in g.endpoints(e))
        remaining.discard(nxt)
        out.append(nxt)
        cur = g.other(nxt, cur)
    if cur != start:
        raise ValueError("edges do not form a cycle")
    return Cycle(tuple(out))


def horton_mcb(g: Graph) -> Tuple[int, List[Cycle]]:
    """Minimum cycle basis by Horton's method.

    Candidates: for every vertex ``v`` and edge ``(x, y)``, the cycle made of
    the BFS-tree paths ``v -> x``, ``v -> y`` and the edge, when those paths
    meet only at ``v``.  Shortest candidates are kept greedily while they are
    GF(2)-independent.
    """
    n, m = g.n, g.m
    tail, head, adj = g.lists()
    candidates: Dict[int, int] = {}
    for root in range(n):
        parent_edge = [-1] * n
        dist = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in adj[x]:
                y = head[e] if tail[e] == x else tail[e]
                if dist[y] == -1:
                    dist[y] = dist[x] + 1
                    parent_edge[y] = e
                    queue.append(y)

        def path(v: int) -> List[int]:
            out = []
            while v != root:
                e = parent_edge[v]
                out.append(e)
                v = head[e] if tail[e] == v else tail[e]
            return out

        def path_vertices(v: int) -> Set[int]:
            out = {v}
            while v != root:
                e = parent_edge[v]
                v = head[e] if tail[e] == v else tail[e]
                out.add(v)
            return out

        for e in range(m):
            x, y = tail[e], head[e]
            if dist[x] == -1 or parent_edge[x] == e or parent_edge[y] == e:
                continue
            if path_vertices(x) & path_vertices(y) != {root}:
                continue
            es = path(x) + path(y) + [e]
            vec = edge_vector(es)
            candidates.setdefault(vec, len(es))
            if len(candidates) > MAX_CYCLES:
                raise OracleGuardError(f"more than {MAX_CYCLES} Horton candidates")

    ranked = sorted(candidates.items(), key=lambda kv: (kv[1], kv[0]))
    want = m - n + 1 if n else 0
    pivots: Dict[int, int] = {}
    basis: List[int] = []
    for vec, _length in ranked:
        r = vec
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                basis.append(vec)
                break
            r ^= p
        if len(basis) == want:
            break
    cycles = [_order_cycle(g, [e for e in range(m) if vec >> e & 1]) for vec in basis]
    return sum(len(c) for c in cycles), cycles


def chordless_cycles(g: Graph) -> List[Cycle]:
    """All induced cycles, by DFS over induced paths anchored at their smallest vertex."""
    n = g.n
    nbrs: List[Set[int]] = [set() for _ in range(n)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    found: List[List[int]] = []

    def extend(path: List[int], on_path: Set[int]):
        s, last = path[0], path[-1]
        for w in sorted(nbrs[last]):
            if w <= s or w in on_path:
                continue
            # w may touch only `last` among the interior vertices
            if any(w in nbrs[x] for x in path[1:-1]):
                continue
            if s in nbrs[w]:
                if len(path) >= 2 and path[1] < w:
                    found.append(path + [w])
                    if len(found) > MAX_CYCLES:
                        raise OracleGuardError(f"more than {MAX_CYCLES} induced cycles")
                continue
            path.append(w)
            on_path.add(w)
            extend(path, on_path)
            on_path.discard(w)
            path.pop()

    for s in range(n):
        for v1 in sorted(nbrs[s]):
            if v1 > s:
                extend([s, v1], {s, v1})

    out = []
    for vs in found:
        es = [g.edge_id(a, b) for a, b in zip(vs, vs[1:] + vs[:1])]
        out.append(Cycle(tuple(es)))
    return out


def _brute_biconnected(g: Graph) -> bool:
    if g.n < 3:
        return False
    nbrs: List[Set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)

    def connected_without(skip: Optional[int]) -> bool:
        start = 0 if skip != 0 else 1
        seen = {start} if skip is None else {start, skip}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == g.n

    return connected_without(None) and all(connected_without(v) for v in range(g.n))


def series_parallel_reduces(g: Graph) -> bool:
    """Suppress degree-2 vertices and merge parallel edges until one edge remains."""
    mult: Counter = Counter()
    for u, v in g.edges:
        mult[(min(u, v), max(u, v))] += 1
    while True:
        # parallel merge
        for key in mult:
            mult[key] = 1
        nbrs: Dict[int, Set[int]] = {}
        for u, v in mult:
            nbrs.setdefault(u, set()).add(v)
            nbrs.setdefault(v, set()).add(u)
        if len(mult) == 1:
            return True
        deg2 = sorted(v for v, s in nbrs.items() if len(s) == 2)
        if not deg2:
            return False
        v = deg2[0]
        a, b = sorted(nbrs[v])
        del mult[(min(a, v), max(a, v))]
        del mult[(min(b, v), max(b, v))]
        mult[(a, b)] += 1


def oracle_recognizer(g: Graph) -> bool:
    """2-connected, series-parallel, and no two induced cycles share two edges."""
    _guard_edges(g, 64)
    if not _brute_biconnected(g):
        return False
    if not series_parallel_reduces(g):
        return False
    cycles = [set(c.edges) for c in chordless_cycles(g)]
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if len(cycles[i] & cycles[j]) > 1:
                return False
    return True
