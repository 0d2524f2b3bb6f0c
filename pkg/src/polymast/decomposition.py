"""Recognition of polygonal 2-trees by reverse ear peeling.

A polygonal 2-tree is grown from a cycle by repeatedly gluing a path of at
least two edges across an existing edge.  Recognition runs that process
backwards: find a maximal chain of degree-2 vertices whose two end vertices
are adjacent, strip its interior, repeat until a single cycle is left.
The stripped chains, reversed and preceded by the final cycle split into a
base edge plus one path, form a nice ear decomposition.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ._kernels import peel_kernel
from .graph import Graph, is_biconnected, is_connected

NOT_CONNECTED = "not-connected"
NOT_2_CONNECTED = "not-2-connected"
PEELING_STUCK = "peeling-stuck"


@dataclass(frozen=True)
class Ear:
    """One ear: a vertex path, its edge ids, and the earlier edge joining its ends.

    The base ear is a single edge and has ``closing_edge is None``.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]
    closing_edge: Optional[int] = None

    @property
    def ends(self) -> Tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def internal(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]


class NiceEarDecomposition:
    """Ears in construction order, stored as flat arrays.

    Ear ``i`` has vertices ``vertices[vertex_offsets[i]:vertex_offsets[i+1]]``,
    edge ids ``edges[edge_offsets[i]:edge_offsets[i+1]]`` and closing edge
    ``closing[i]`` (-1 for the base ear).
    """

    __slots__ = ("vertices", "vertex_offsets", "edges", "edge_offsets", "closing")

    def __init__(self, vertices, vertex_offsets, edges, edge_offsets, closing):
        self.vertices = np.asarray(vertices, dtype=np.int64)
        self.vertex_offsets = np.asarray(vertex_offsets, dtype=np.int64)
        self.edges = np.asarray(edges, dtype=np.int64)
        self.edge_offsets = np.asarray(edge_offsets, dtype=np.int64)
        self.closing = np.asarray(closing, dtype=np.int64)

    @classmethod
    def from_ears(cls, ears: Sequence[Ear]) -> "NiceEarDecomposition":
        vs: List[int] = []
        es: List[int] = []
        voff = [0]
        eoff = [0]
        closing = []
        for ear in ears:
            vs.extend(ear.vertices)
            es.extend(ear.edges)
            voff.append(len(vs))
            eoff.append(len(es))
            closing.append(-1 if ear.closing_edge is None else ear.closing_edge)
        return cls(vs, voff, es, eoff, closing)

    def __len__(self) -> int:
        return len(self.closing)

    def __getitem__(self, i: int) -> Ear:
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        a, b = self.vertex_offsets[i], self.vertex_offsets[i + 1]
        c, d = self.edge_offsets[i], self.edge_offsets[i + 1]
        close = int(self.closing[i])
        return Ear(
            tuple(self.vertices[a:b].tolist()),
            tuple(self.edges[c:d].tolist()),
            None if close < 0 else close,
        )

    def __iter__(self) -> Iterator[Ear]:
        return (self[i] for i in range(len(self)))

    @property
    def ears(self) -> Tuple[Ear, ...]:
        return tuple(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NiceEarDecomposition):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, f), getattr(other, f)) for f in self.__slots__
        )

    def __repr__(self) -> str:
        return f"NiceEarDecomposition({len(self)} ears)"


class NotPolygonalError(ValueError):
    """Raised when an operation needs a polygonal 2-tree and did not get one."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


@dataclass(frozen=True)
class RecognitionOutcome:
    decomposition: Optional[NiceEarDecomposition] = None
    reason: Optional[str] = None
    detail: str = field(default="", compare=False)

    @property
    def accepted(self) -> bool:
        return self.decomposition is not None

    def unwrap(self) -> NiceEarDecomposition:
        if self.decomposition is None:
            raise NotPolygonalError(self.reason or "rejected", self.detail)
        return self.decomposition


def _reject(reason: str, detail: str = "") -> RecognitionOutcome:
    return RecognitionOutcome(reason=reason, detail=detail)


def recognize(g: Graph) -> RecognitionOutcome:
    """Accept ``g`` with a nice ear decomposition iff it is a polygonal 2-tree.

    Peeling succeeds only on polygonal 2-trees (its output replays into
    ``g``), so connectivity is examined only to explain a rejection.
    """
    if g.n >= 3 and g.m >= 3:
        ok, vflat, voff, eflat, eoff, closing, res_n, res_m = peel_kernel(
            g.n, g.tail, g.head, g.offsets, g.incident
        )
        if ok:
            return RecognitionOutcome(
                decomposition=NiceEarDecomposition(vflat, voff, eflat, eoff, closing)
            )
    else:
        res_n, res_m = g.n, g.m
    if g.n == 0 or not is_connected(g):
        return _reject(NOT_CONNECTED, f"n={g.n}, m={g.m}")
    if not is_biconnected(g):
        return _reject(NOT_2_CONNECTED, f"n={g.n}, m={g.m}")
    return _reject(
        PEELING_STUCK,
        f"no removable chain; residual graph has {res_n} vertices and {res_m} edges",
    )


def recognize_reference(g: Graph) -> RecognitionOutcome:
    """Plain-Python peeling; same ears as :func:`recognize`, kept for cross-checks."""
    if g.n == 0 or not is_connected(g):
        return _reject(NOT_CONNECTED, f"n={g.n}, m={g.m}")
    if not is_biconnected(g):
        return _reject(NOT_2_CONNECTED, f"n={g.n}, m={g.m}")

    n = g.n
    tail, head, adj = g.lists()
    inc = [list(a) for a in adj]
    deg = [len(a) for a in inc]
    edge_alive = bytearray(b"\x01") * g.m
    vertex_gone = bytearray(n)
    # internal vertices of a chain found stuck; cleared when the chain grows
    examined = bytearray(n)
    edges_left = g.m
    vertices_left = n

    def alive_pair(v: int) -> Tuple[int, int]:
        lst = inc[v]
        if len(lst) > 2:
            lst = [e for e in lst if edge_alive[e]]
            inc[v] = lst
        return lst[0], lst[1]

    peeled: List[Ear] = []
    heap = [v for v in range(n) if deg[v] == 2]
    cycle: Optional[Tuple[List[int], List[int]]] = None
    while heap:
        v = heapq.heappop(heap)
        if deg[v] != 2 or vertex_gone[v] or examined[v]:
            continue
        e_left, e_right = alive_pair(v)

        # walk left from v until a branch vertex (or back to v: a bare cycle)
        left_vs: List[int] = []
        left_es: List[int] = []
        cur, e = v, e_left
        closed = False
        while True:
            left_es.append(e)
            nxt = tail[e] if head[e] == cur else head[e]
            if nxt == v:
                closed = True
                break
            left_vs.append(nxt)
            if deg[nxt] != 2:
                break
            a, b = alive_pair(nxt)
            e = b if a == e else a
            cur = nxt
        if closed:
            cycle = ([v] + left_vs, left_es)
            break
        right_vs: List[int] = []
        right_es: List[int] = []
        cur, e = v, e_right
        while True:
            right_es.append(e)
            nxt = tail[e] if head[e] == cur else head[e]
            right_vs.append(nxt)
            if deg[nxt] != 2:
                break
            a, b = alive_pair(nxt)
            e = b if a == e else a
            cur = nxt

        path_vs = left_vs[::-1] + [v] + right_vs
        path_es = left_es[::-1] + right_es
        x, y = path_vs[0], path_vs[-1]
        closing = g.edge_id(x, y) if x != y else None
        if closing is None or not edge_alive[closing]:
            for w in path_vs[1:-1]:
                examined[w] = 1
            continue
        if x > y:
            path_vs.reverse()
            path_es.reverse()
        peeled.append(Ear(tuple(path_vs), tuple(path_es), closing))
        for w in path_vs[1:-1]:
            vertex_gone[w] = 1
        for f in path_es:
            edge_alive[f] = 0
        vertices_left -= len(path_vs) - 2
        edges_left -= len(path_es)
        for w in (x, y):
            deg[w] -= 1
            if deg[w] == 2:
                examined[w] = 0
                heapq.heappush(heap, w)

    if cycle is None or len(cycle[1]) != edges_left or edges_left != vertices_left:
        return _reject(
            PEELING_STUCK,
            f"no removable chain; residual graph has {vertices_left} vertices "
            f"and {edges_left} edges",
        )

    cyc_vs, cyc_es = cycle
    # cyc_es[i] joins cyc_vs[i] and cyc_vs[i+1]; the lowest-id edge becomes the base ear
    k = min(range(len(cyc_es)), key=cyc_es.__getitem__)
    base = cyc_es[k]
    L = len(cyc_es)
    rest_vs = [cyc_vs[(k + 1 + i) % L] for i in range(L)]
    rest_es = [cyc_es[(k + 1 + i) % L] for i in range(L - 1)]
    if rest_vs[0] > rest_vs[-1]:
        rest_vs.reverse()
        rest_es.reverse()
    ears = [Ear((rest_vs[0], rest_vs[-1]), (base,)), Ear(tuple(rest_vs), tuple(rest_es), base)]
    ears.extend(reversed(peeled))
    return RecognitionOutcome(decomposition=NiceEarDecomposition.from_ears(ears))


def verify_nice(g: Graph, d: NiceEarDecomposition) -> bool:
    """Independent check that ``d`` is a nice ear decomposition of ``g``."""
    ears = list(d)
    if not ears:
        return False
    lookup = {frozenset(uv): e for e, uv in enumerate(g.edges)}

    def edge_ids(vs: Sequence[int]) -> Optional[List[int]]:
        out = []
        for a, b in zip(vs, vs[1:]):
            e = lookup.get(frozenset((a, b)))
            if e is None:
                return None
            out.append(e)
        return out

    owner = [-1] * g.m  # index of the ear holding each edge
    seen_vertices = set()
    for i, ear in enumerate(ears):
        vs = list(ear.vertices)
        es = edge_ids(vs)
        if es is None or (ear.edges and list(ear.edges) != es):
            return False
        if len(set(vs)) != len(vs):
            return False
        for e in es:
            if owner[e] != -1:
                return False
            owner[e] = i
        if i == 0:
            if len(vs) != 2 or ear.closing_edge is not None:
                return False
        else:
            if len(vs) < 3:
                return False
            x, y = vs[0], vs[-1]
            if x not in seen_vertices or y not in seen_vertices:
                return False
            if any(w in seen_vertices for w in vs[1:-1]):
                return False
            closing = lookup.get(frozenset((x, y)))
            if closing is None or not 0 <= owner[closing] < i:
                return False
            if ear.closing_edge is not None and ear.closing_edge != closing:
                return False
        seen_vertices.update(vs)
    return -1 not in owner and len(seen_vertices) == g.n


def replay(d: NiceEarDecomposition) -> List[Tuple[int, int]]:
    """Edges produced by rebuilding the graph ear by ear, in construction order."""
    out: List[Tuple[int, int]] = []
    for ear in d:
        out.extend(zip(ear.vertices, ear.vertices[1:]))
    return out


def format_ears(d: NiceEarDecomposition) -> str:
    return "".join(" ".join(map(str, ear.vertices)) + "\n" for ear in d)
