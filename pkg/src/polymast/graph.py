"""Simple undirected graphs with positional edge ids, plus structural queries.

Edge ``i`` is the ``i``-th pair handed to :func:`build_graph`.  Endpoints and
a CSR incidence index are stored as numpy arrays so that graphs with
millions of edges stay compact; :meth:`Graph.lists` hands out plain Python
lists for the small-graph routines.  Graphs are never mutated; "G minus A"
is expressed by passing an :class:`EdgeSet` of blocked edges.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

INF = -1  # unreachable marker in distance lists


class GraphError(ValueError):
    """Malformed graph input.  ``edge`` is the offending (index, (u, v)) if any."""

    def __init__(self, message: str, edge: Optional[Tuple[int, Tuple[int, int]]] = None):
        super().__init__(message)
        self.edge = edge


class EdgeSet:
    """Membership set over edge ids ``0..m-1`` backed by a bytearray."""

    __slots__ = ("mask", "_count")

    def __init__(self, m: int, ids: Iterable[int] = ()):
        self.mask = bytearray(m)
        self._count = 0
        for e in ids:
            self.add(e)

    @classmethod
    def from_mask(cls, mask) -> "EdgeSet":
        out = cls(0)
        out.mask = bytearray(np.asarray(mask, dtype=np.uint8).tobytes())
        out._count = out.mask.count(1)
        return out

    @property
    def capacity(self) -> int:
        return len(self.mask)

    def as_array(self) -> np.ndarray:
        return np.frombuffer(self.mask, dtype=np.uint8)

    def add(self, e: int) -> None:
        if not 0 <= e < len(self.mask):
            raise IndexError(f"edge id {e} out of range for m={len(self.mask)}")
        if not self.mask[e]:
            self.mask[e] = 1
            self._count += 1

    def discard(self, e: int) -> None:
        if self.mask[e]:
            self.mask[e] = 0
            self._count -= 1

    def __contains__(self, e: object) -> bool:
        return isinstance(e, (int, np.integer)) and 0 <= e < len(self.mask) and self.mask[e] == 1

    def __len__(self) -> int:
        return self._count

    def __iter__(self) -> Iterator[int]:
        return iter(np.flatnonzero(self.as_array()).tolist())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, EdgeSet):
            return self.mask == other.mask
        return NotImplemented

    def __repr__(self) -> str:
        return f"EdgeSet({list(self)})"

    def copy(self) -> "EdgeSet":
        out = EdgeSet(0)
        out.mask = bytearray(self.mask)
        out._count = self._count
        return out

    def complement(self) -> "EdgeSet":
        return EdgeSet.from_mask(1 - self.as_array())


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``tail[e]``/``head[e]`` are the endpoints of edge ``e`` as given.  The
    edges incident to ``v`` are ``incident[offsets[v]:offsets[v + 1]]``,
    in increasing id order.
    """

    __slots__ = ("n", "tail", "head", "offsets", "incident", "_lists", "_keys")

    def __init__(self, n: int, tail: np.ndarray, head: np.ndarray):
        self.n = n
        self.tail = tail
        self.head = head
        m = len(tail)
        ends = np.concatenate([tail, head])
        ids = np.concatenate([np.arange(m, dtype=np.int64)] * 2)
        order = np.argsort(ends * max(m, 1) + ids, kind="stable")
        self.incident = ids[order]
        self.offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(ends, minlength=n), out=self.offsets[1:])
        for arr in (self.tail, self.head, self.incident, self.offsets):
            arr.flags.writeable = False
        self._lists = None
        self._keys = None

    @property
    def m(self) -> int:
        return len(self.tail)

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return list(zip(self.tail.tolist(), self.head.tolist()))

    def lists(self) -> Tuple[List[int], List[int], List[List[int]]]:
        """``(tail, head, adj)`` as Python lists, built once and cached."""
        if self._lists is None:
            inc = self.incident.tolist()
            off = self.offsets.tolist()
            adj = [inc[off[v]:off[v + 1]] for v in range(self.n)]
            self._lists = (self.tail.tolist(), self.head.tolist(), adj)
        return self._lists

    @property
    def adj(self) -> List[List[int]]:
        return self.lists()[2]

    def endpoints(self, e: int) -> Tuple[int, int]:
        return int(self.tail[e]), int(self.head[e])

    def other(self, e: int, v: int) -> int:
        t = int(self.tail[e])
        return int(self.head[e]) if t == v else t

    def neighbors(self, v: int) -> Iterator[Tuple[int, int]]:
        """Yield ``(w, e)`` for every edge ``e = (v, w)``."""
        tail, head, adj = self.lists()
        for e in adj[v]:
            t = tail[e]
            yield (head[e] if t == v else t), e

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def edge_keys(self) -> Tuple[np.ndarray, np.ndarray]:
        """Sorted ``min*n + max`` keys and the matching edge ids."""
        if self._keys is None:
            lo = np.minimum(self.tail, self.head)
            hi = np.maximum(self.tail, self.head)
            keys = lo * self.n + hi
            order = np.argsort(keys, kind="stable")
            self._keys = (keys[order], order.astype(np.int64))
        return self._keys

    def edge_id(self, u: int, v: int) -> Optional[int]:
        """Id of edge ``{u, v}``, or None."""
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            return None
        keys, ids = self.edge_keys()
        key = min(u, v) * self.n + max(u, v)
        i = int(np.searchsorted(keys, key))
        if i < len(keys) and keys[i] == key:
            return int(ids[i])
        return None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def from_arrays(n: int, tail, head) -> Graph:
    """Validate endpoint arrays and build a :class:`Graph` (vectorised checks)."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    tail = np.array(tail, dtype=np.int64).reshape(-1)
    head = np.array(head, dtype=np.int64).reshape(-1)
    if tail.shape != head.shape:
        raise GraphError("endpoint arrays differ in length")

    def fail(e: int, what: str):
        e = int(e)
        u, v = int(tail[e]), int(head[e])
        raise GraphError(f"edge {e} ({u}, {v}): {what}", (e, (u, v)))

    bad = np.flatnonzero((tail < 0) | (tail >= n) | (head < 0) | (head >= n))
    if len(bad):
        fail(bad[0], f"vertex out of range for n={n}")
    bad = np.flatnonzero(tail == head)
    if len(bad):
        fail(bad[0], "self-loop")
    if len(tail):
        keys = np.minimum(tail, head) * n + np.maximum(tail, head)
        order = np.argsort(keys, kind="stable")
        dup = np.flatnonzero(keys[order][1:] == keys[order][:-1])
        if len(dup):
            fail(order[dup + 1].min(), "duplicate edge")
    return Graph(n, tail, head)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build a :class:`Graph`; edge ids follow input order.

    Raises :class:`GraphError` on out-of-range endpoints, self-loops and
    duplicate edges, naming the first offending edge.
    """
    pairs = [tuple(p) for p in edge_list]
    for e, p in enumerate(pairs):
        if len(p) != 2:
            raise GraphError(f"edge {e}: expected a vertex pair, got {p!r}")
    if not pairs:
        return from_arrays(n, [], [])
    arr = np.array(pairs, dtype=np.int64)
    return from_arrays(n, arr[:, 0], arr[:, 1])


def _blocked_mask(g: Graph, blocked: Optional[EdgeSet]) -> bytearray:
    if blocked is None:
        return bytearray(g.m)
    if blocked.capacity != g.m:
        raise ValueError("blocked edge set does not match graph size")
    return blocked.mask


def bfs_distances(g: Graph, source: int, blocked: Optional[EdgeSet] = None) -> List[int]:
    """Hop distances from ``source`` in ``g`` minus ``blocked``; ``INF`` (-1) if unreachable."""
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    mask = _blocked_mask(g, blocked)
    tail, head, adj = g.lists()
    dist = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for e in adj[v]:
            if mask[e]:
                continue
            w = tail[e]
            if w == v:
                w = head[e]
            if dist[w] == INF:
                dist[w] = dv
                queue.append(w)
    return dist


def is_connected(g: Graph, blocked: Optional[EdgeSet] = None) -> bool:
    if g.n == 0:
        return True
    return INF not in bfs_distances(g, 0, blocked)


def _dfs_lowlink(g: Graph, mask: bytearray, on_component=None) -> List[int]:
    """Iterative Hopcroft-Tarjan over unblocked edges.

    Returns the list of bridge ids.  If ``on_component`` is given it is called
    with the edge-id list of each biconnected block (bridges included as
    singleton blocks).
    """
    n = g.n
    tail, head, adj = g.lists()
    disc = [-1] * n
    low = [0] * n
    found: List[int] = []
    estack: List[int] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: [vertex, edge used to enter, position in adj list]
        stack = [[root, -1, 0]]
        while stack:
            frame = stack[-1]
            v, pe, i = frame
            edges_v = adj[v]
            if i < len(edges_v):
                frame[2] = i + 1
                e = edges_v[i]
                if e == pe or mask[e]:
                    continue
                w = tail[e]
                if w == v:
                    w = head[e]
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    estack.append(e)
                    stack.append([w, e, 0])
                elif disc[w] < disc[v]:
                    estack.append(e)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                continue
            stack.pop()
            if pe == -1:
                continue
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] > disc[u]:
                found.append(pe)
            if low[v] >= disc[u]:
                block = []
                while True:
                    f = estack.pop()
                    block.append(f)
                    if f == pe:
                        break
                if on_component is not None:
                    on_component(block)
    return found


def bridges(g: Graph, blocked: Optional[EdgeSet] = None) -> EdgeSet:
    """Edges whose removal disconnects their component (in ``g`` minus ``blocked``)."""
    return EdgeSet(g.m, _dfs_lowlink(g, _blocked_mask(g, blocked)))


def biconnected_components(g: Graph, blocked: Optional[EdgeSet] = None) -> List[EdgeSet]:
    """Maximal 2-connected blocks as edge sets; each bridge is its own block.

    Blocks are ordered by their smallest edge id.
    """
    blocks: List[List[int]] = []
    _dfs_lowlink(g, _blocked_mask(g, blocked), blocks.append)
    blocks.sort(key=min)
    return [EdgeSet(g.m, b) for b in blocks]


def is_biconnected(g: Graph) -> bool:
    """Connected, at least three vertices, and a single block."""
    if g.n < 3 or not is_connected(g):
        return False
    blocks: List[List[int]] = []
    _dfs_lowlink(g, bytearray(g.m), blocks.append)
    return len(blocks) == 1
