"""Stretch of a spanning tree and its fundamental cycles.

Tree distances come from lowest common ancestors on the rooted tree
(binary lifting), so deep trees cost O(m log n) rather than a walk per edge.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Tuple, Union

import numpy as np

from ._kernels import root_tree_kernel, stretch_kernel
from .cycles import Cycle
from .graph import EdgeSet, Graph


class NotSpanningTreeError(ValueError):
    pass


def _as_edge_set(g: Graph, tree: Union[EdgeSet, Iterable[int]]) -> EdgeSet:
    if isinstance(tree, EdgeSet):
        if tree.capacity != g.m:
            raise NotSpanningTreeError("edge set does not match the graph")
        return tree
    ids = list(tree)
    if any(not 0 <= e < g.m for e in ids):
        raise NotSpanningTreeError("edge id out of range")
    if len(set(ids)) != len(ids):
        raise NotSpanningTreeError("repeated edge id")
    return EdgeSet(g.m, ids)


class RootedTree:
    """A spanning tree of ``g`` rooted at vertex 0."""

    def __init__(self, g: Graph, tree: Union[EdgeSet, Iterable[int]]):
        t = _as_edge_set(g, tree)
        n = g.n
        if n == 0 or len(t) != n - 1:
            raise NotSpanningTreeError(f"a spanning tree needs {max(n - 1, 0)} edges, got {len(t)}")
        parent, pedge, depth, reached = root_tree_kernel(
            n, g.tail, g.head, g.offsets, g.incident, t.as_array()
        )
        if reached != n:
            raise NotSpanningTreeError("edge set does not connect every vertex")
        self.g = g
        self.edges = t
        self.parent = parent
        self.parent_edge = pedge
        self.depth = depth
        self._py = None

    def edge_stretches(self) -> np.ndarray:
        """Tree distance between the endpoints of every edge of ``g``."""
        return stretch_kernel(self.parent, self.depth, self.g.tail, self.g.head)

    def path_edges(self, u: int, v: int) -> List[int]:
        """Tree edges on the path from ``u`` to ``v``, in walking order."""
        if self._py is None:
            self._py = (self.depth.tolist(), self.parent.tolist(), self.parent_edge.tolist())
        depth, parent, pe = self._py
        front: List[int] = []
        back: List[int] = []
        while depth[u] > depth[v]:
            front.append(pe[u])
            u = parent[u]
        while depth[v] > depth[u]:
            back.append(pe[v])
            v = parent[v]
        while u != v:
            front.append(pe[u])
            u = parent[u]
            back.append(pe[v])
            v = parent[v]
        back.reverse()
        return front + back


def total_stretch(g: Graph, tree) -> int:
    """Sum over all edges of the tree distance between their endpoints."""
    return int(RootedTree(g, tree).edge_stretches().sum())


def average_stretch(g: Graph, tree) -> Fraction:
    if g.m == 0:
        raise ValueError("average stretch is undefined for a graph without edges")
    return Fraction(total_stretch(g, tree), g.m)


def fundamental_cycles(g: Graph, tree) -> List[Cycle]:
    """One cycle per non-tree edge: the edge followed by the tree path back."""
    rt = RootedTree(g, tree)
    mask = rt.edges.mask
    tail, head = g.tail.tolist(), g.head.tolist()
    out = []
    for e in range(g.m):
        if mask[e]:
            continue
        out.append(Cycle((e,) + tuple(rt.path_edges(head[e], tail[e]))))
    return out


def fcb_size_identity(n: int, m: int, total: int) -> int:
    """Total fundamental-cycle length implied by a total stretch."""
    return total - (n - 1) + (m - n + 1)


def stretch_summary(g: Graph, tree) -> Tuple[int, Fraction, int]:
    total = total_stretch(g, tree)
    return total, Fraction(total, g.m), fcb_size_identity(g.n, g.m, total)
