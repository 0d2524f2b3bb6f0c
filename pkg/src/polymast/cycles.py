"""Induced cycles of a polygonal 2-tree and GF(2) cycle-basis checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple

import numpy as np

from .decomposition import NiceEarDecomposition, recognize
from .graph import Graph


@dataclass(frozen=True)
class Cycle:
    """A simple cycle as the ordered list of its edge ids."""

    edges: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self, g: Graph) -> List[int]:
        """Vertex walk following the edge order; the closing vertex is not repeated."""
        es = self.edges
        if len(es) < 3:
            raise ValueError("a simple cycle has at least three edges")
        u0, v0 = g.endpoints(es[0])
        start = u0 if u0 in g.endpoints(es[-1]) else v0
        walk = [start]
        cur = start
        for e in es[:-1]:
            cur = g.other(e, cur)
            walk.append(cur)
        return walk


class InducedCycleSet:
    """Cycles as flat edge arrays plus a per-edge incidence index.

    Cycle ``i`` is ``edges[offsets[i]:offsets[i+1]]``; the cycles through
    edge ``e`` are ``inc_cycles[inc_offsets[e]:inc_offsets[e+1]]``.
    """

    __slots__ = ("m", "edges", "offsets", "inc_offsets", "inc_cycles", "_cycles", "_incidence")

    def __init__(self, m: int, edges, offsets):
        self.m = m
        self.edges = np.asarray(edges, dtype=np.int64)
        self.offsets = np.asarray(offsets, dtype=np.int64)
        lens = np.diff(self.offsets)
        owner = np.repeat(np.arange(len(lens), dtype=np.int64), lens)
        order = np.argsort(self.edges, kind="stable")
        self.inc_cycles = owner[order]
        self.inc_offsets = np.zeros(m + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.edges, minlength=m), out=self.inc_offsets[1:])
        self._cycles = None
        self._incidence = None

    @classmethod
    def from_cycles(cls, m: int, cycles: Iterable) -> "InducedCycleSet":
        flat: List[int] = []
        offsets = [0]
        for c in cycles:
            flat.extend(c.edges if isinstance(c, Cycle) else c)
            offsets.append(len(flat))
        return cls(m, flat, offsets)

    def __len__(self) -> int:
        return len(self.offsets) - 1

    @property
    def cycles(self) -> Tuple[Cycle, ...]:
        if self._cycles is None:
            flat = self.edges.tolist()
            off = self.offsets.tolist()
            self._cycles = tuple(Cycle(tuple(flat[off[i]:off[i + 1]])) for i in range(len(self)))
        return self._cycles

    @property
    def incidence(self) -> Tuple[Tuple[int, ...], ...]:
        """For each edge, the indices of the cycles containing it (ascending)."""
        if self._incidence is None:
            flat = self.inc_cycles.tolist()
            off = self.inc_offsets.tolist()
            self._incidence = tuple(tuple(flat[off[e]:off[e + 1]]) for e in range(self.m))
        return self._incidence

    def __iter__(self) -> Iterator[Cycle]:
        return iter(self.cycles)

    def __getitem__(self, i: int) -> Cycle:
        return self.cycles[i]

    def lengths(self) -> np.ndarray:
        return np.diff(self.offsets)

    def __repr__(self) -> str:
        return f"InducedCycleSet({len(self)} cycles, size {basis_size(self)})"


def induced_cycles(g: Graph, d: NiceEarDecomposition) -> InducedCycleSet:
    """Cycles closed by each ear: ear ``i >= 1`` plus the edge joining its ends.

    For the first path that edge is the base ear, so the cycle list is one
    shorter than the ear list.
    """
    k = len(d) - 1
    if k < 1:
        raise ValueError("decomposition needs a base edge and at least one path")
    lens = np.diff(d.edge_offsets)[1:]
    offsets = np.zeros(k + 1, dtype=np.int64)
    np.cumsum(lens + 1, out=offsets[1:])
    flat = np.empty(offsets[-1], dtype=np.int64)
    closing_slot = np.zeros(len(flat), dtype=bool)
    closing_slot[offsets[1:] - 1] = True
    flat[closing_slot] = d.closing[1:]
    flat[~closing_slot] = d.edges[d.edge_offsets[1]:]
    return InducedCycleSet(g.m, flat, offsets)


def basis_size(s: InducedCycleSet) -> int:
    return int(s.offsets[-1])


def minimum_cycle_basis(g: Graph) -> InducedCycleSet:
    """The unique minimum cycle basis of a polygonal 2-tree (its induced cycles).

    Raises :class:`~polymast.decomposition.NotPolygonalError` otherwise.
    """
    return induced_cycles(g, recognize(g).unwrap())


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of bit-vectors given as Python ints."""
    pivots: dict = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank


def edge_vector(edges: Iterable[int]) -> int:
    v = 0
    for e in edges:
        v ^= 1 << e
    return v


def verify_cycle_basis(g: Graph, s) -> bool:
    """True iff the cycles are GF(2)-independent and number ``m - n + 1``.

    ``s`` may be an :class:`InducedCycleSet` or any iterable of cycles or
    edge-id lists.  ``g`` is assumed connected.
    """
    cycles = list(s.cycles if isinstance(s, InducedCycleSet) else s)
    rows = [edge_vector(c.edges if isinstance(c, Cycle) else c) for c in cycles]
    if len(rows) != g.m - g.n + 1:
        return False
    return gf2_rank(rows) == len(rows)
