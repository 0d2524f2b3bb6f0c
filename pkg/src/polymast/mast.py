"""Minimum average stretch spanning trees of polygonal 2-trees.

The engine removes edges one at a time.  At every step the candidates are
the boundary edges: edges of the current graph that lie on exactly one
surviving induced cycle.  Each candidate carries a cost, the number of
already-removed edges whose shortest detour would run through it; the
cheapest candidate is removed next.  Costs are maintained incrementally:
removing ``e`` from its last cycle ``C`` charges ``cost(e) + 1`` to every
other edge of ``C``.  When no candidate is left the surviving edges form an
optimal tree.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import numpy as np

from ._kernels import mast_kernel
from .cycles import InducedCycleSet, induced_cycles
from .decomposition import NiceEarDecomposition, recognize
from .graph import INF, EdgeSet, Graph, bfs_distances, biconnected_components
from .stretch import RootedTree, fcb_size_identity


class InvariantError(AssertionError):
    pass


@dataclass
class MastStats:
    """Operation counts.  The python engine deletes lazily, so its ``pops``
    include discarded entries; the compiled engine deletes in place and
    ``pops`` equals ``extractions``."""

    pushes: int = 0
    pops: int = 0
    deletes: int = 0
    extractions: int = 0
    cycle_scan_ops: int = 0
    incidence_scan_ops: int = 0

    @property
    def heap_ops(self) -> int:
        return self.pushes + self.pops + self.deletes


@dataclass
class MastState:
    """Live bookkeeping of the engine; exposed to audit hooks between steps."""

    g: Graph
    cycles: InducedCycleSet
    removed: EdgeSet
    removal_order: List[int]
    cost: List[int]
    processed: bytearray
    unprocessed_count: List[int]
    queued: bytearray
    heap: List[Tuple[int, int]]
    stats: MastStats = field(default_factory=MastStats)

    def queue_contents(self) -> List[int]:
        return [e for e in range(self.g.m) if self.queued[e]]

    def unprocessed_cycle(self, e: int) -> int:
        for ci in self.cycles.incidence[e]:
            if not self.processed[ci]:
                return ci
        raise InvariantError(f"edge {e} has no unprocessed cycle")


@dataclass(frozen=True)
class MastResult:
    tree: EdgeSet
    removal_order: Tuple[int, ...]
    total_stretch: int
    average_stretch: Fraction
    fcb_size: int
    stats: MastStats = field(compare=False, repr=False, default_factory=MastStats)

    @property
    def tree_edges(self) -> List[int]:
        return list(self.tree)


Hook = Callable[[MastState, int], None]


def run_mast(
    g: Graph,
    d: Optional[NiceEarDecomposition] = None,
    *,
    cycles: Optional[InducedCycleSet] = None,
    debug: bool = False,
    on_extract: Optional[Hook] = None,
    engine: str = "auto",
) -> MastResult:
    """Compute a minimum average stretch spanning tree of a polygonal 2-tree.

    ``d`` defaults to the recognizer's decomposition.  With ``debug`` the
    queue/count/cycle invariants are re-derived from scratch and checked
    after every step (quadratic; for small graphs).  ``on_extract`` is
    called with the state and the extracted edge before the edge is removed.

    ``engine`` is ``"compiled"``, ``"python"`` or ``"auto"`` (compiled unless
    a hook or ``debug`` needs the step-by-step Python loop).  Both engines
    remove the same edges in the same order.
    """
    if cycles is None:
        if d is None:
            d = recognize(g).unwrap()
        cycles = induced_cycles(g, d)
    if engine not in ("auto", "compiled", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    stepwise = debug or on_extract is not None
    if engine == "compiled" and stepwise:
        raise ValueError("debug checks and hooks need the python engine")
    if engine == "python" or stepwise:
        state = _initial_state(g, cycles)
        if debug:
            check_invariants(state)
        _run(state, on_extract, check_invariants if debug else None)
        order = tuple(state.removal_order)
        stats = state.stats
        tree = state.removed.complement()
    else:
        if g.m >= 1 << 31:
            raise ValueError("compiled engine packs edge ids in 32 bits")
        removal, _cost, raw = mast_kernel(
            g.m, cycles.offsets, cycles.edges, cycles.inc_offsets, cycles.inc_cycles
        )
        inserts, extracts, deletes, scans, inc_scans = raw.tolist()
        stats = MastStats(
            pushes=inserts,
            pops=extracts,
            deletes=deletes,
            extractions=extracts,
            cycle_scan_ops=scans,
            incidence_scan_ops=inc_scans,
        )
        order = tuple(removal.tolist())
        mask = np.ones(g.m, dtype=np.uint8)
        mask[removal] = 0
        tree = EdgeSet.from_mask(mask)
    total = int(RootedTree(g, tree).edge_stretches().sum())
    return MastResult(
        tree=tree,
        removal_order=order,
        total_stretch=total,
        average_stretch=Fraction(total, g.m),
        fcb_size=fcb_size_identity(g.n, g.m, total),
        stats=stats,
    )


def _initial_state(g: Graph, cycles: InducedCycleSet) -> MastState:
    m = g.m
    unp = np.diff(cycles.inc_offsets).tolist()
    queued = bytearray(m)
    heap = []
    for e in range(m):
        if unp[e] == 1:
            queued[e] = 1
            heap.append((0, e))
    # already sorted by (0, e), hence a valid heap
    state = MastState(
        g=g,
        cycles=cycles,
        removed=EdgeSet(m),
        removal_order=[],
        cost=[0] * m,
        processed=bytearray(len(cycles)),
        unprocessed_count=unp,
        queued=queued,
        heap=heap,
    )
    state.stats.pushes = len(heap)
    return state


def _run(state: MastState, on_extract: Optional[Hook], check: Optional[Callable]) -> None:
    heap = state.heap
    queued = state.queued
    cost = state.cost
    unp = state.unprocessed_count
    processed = state.processed
    incidence = state.cycles.incidence
    cycle_edges = [c.edges for c in state.cycles.cycles]
    removed_mask = state.removed
    order = state.removal_order
    stats = state.stats
    heappop, heappush = heapq.heappop, heapq.heappush
    pushes = pops = deletes = scans = inc_scans = 0

    while heap:
        _, e = heappop(heap)
        pops += 1
        if not queued[e]:
            continue  # logically deleted earlier
        if on_extract is not None:
            on_extract(state, e)
        queued[e] = 0
        removed_mask.add(e)
        order.append(e)
        for ci in incidence[e]:
            inc_scans += 1
            if not processed[ci]:
                break
        else:
            raise InvariantError(f"extracted edge {e} lies on no unprocessed cycle")
        processed[ci] = 1
        charge = cost[e] + 1
        for f in cycle_edges[ci]:
            scans += 1
            if f == e:
                continue
            cost[f] += charge
            left = unp[f] - 1
            unp[f] = left
            if left == 1:
                queued[f] = 1
                heappush(heap, (cost[f], f))
                pushes += 1
            elif left == 0:
                queued[f] = 0
                deletes += 1
        if check is not None:
            check(state)

    stats.pushes += pushes
    stats.pops += pops
    stats.deletes += deletes
    stats.extractions += len(order)
    stats.cycle_scan_ops += scans
    stats.incidence_scan_ops += inc_scans


# ---------------------------------------------------------------------------
# Independent re-derivations used by the debug checks and the test-suite.


def _components_without(g: Graph, block_mask: bytearray, x: int, y: int, removed: bytearray) -> int:
    """Components of a block after deleting vertices ``x`` and ``y``."""
    tail, head, adj = g.lists()
    seen = {x, y}
    count = 0
    verts = set()
    for e in range(g.m):
        if block_mask[e] and not removed[e]:
            verts.add(tail[e])
            verts.add(head[e])
    for s in verts:
        if s in seen:
            continue
        count += 1
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for f in adj[v]:
                if not block_mask[f] or removed[f]:
                    continue
                w = tail[f] if head[f] == v else head[f]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def boundary_edges(g: Graph, removed: EdgeSet) -> EdgeSet:
    """Edges of ``g - removed`` that are not bridges and lie on exactly one induced cycle.

    Computed without cycle bookkeeping: inside a 2-connected block that is a
    polygonal 2-tree, the induced cycles through an edge ``(x, y)`` match the
    components left after deleting ``x`` and ``y``.
    """
    out = EdgeSet(g.m)
    for block in biconnected_components(g, removed):
        if len(block) < 3:
            continue
        for e in block:
            x, y = g.endpoints(e)
            if _components_without(g, block.mask, x, y, removed.mask) == 1:
                out.add(e)
    return out


def support(g: Graph, removed: EdgeSet, e: int) -> EdgeSet:
    """Removed edges ``(u, v)`` having a shortest ``u``-``v`` path in ``g - removed`` through ``e``."""
    if e in removed or e not in boundary_edges(g, removed):
        raise ValueError(f"edge {e} is not a boundary edge of the current graph")
    x, y = g.endpoints(e)
    out = EdgeSet(g.m)
    for f in removed:
        u, v = g.endpoints(f)
        du = bfs_distances(g, u, removed)
        dv = bfs_distances(g, v, removed)
        if du[v] == INF:
            continue
        if du[x] + 1 + dv[y] == du[v] or du[y] + 1 + dv[x] == du[v]:
            out.add(f)
    return out


def check_invariants(state: MastState) -> None:
    """Queue = boundary, counts = surviving cycles, queued edges see their own cycle."""
    g = state.g
    removed = state.removed
    live_cycles = [
        not any(f in removed for f in c.edges) for c in state.cycles.cycles
    ]
    bound = boundary_edges(g, removed)
    queue = set(state.queue_contents())
    if queue != set(bound):
        raise InvariantError(f"queue {sorted(queue)} != boundary {sorted(bound)}")
    for e in range(g.m):
        if e in removed:
            continue
        live = sum(live_cycles[ci] for ci in state.cycles.incidence[e])
        if state.unprocessed_count[e] != live:
            raise InvariantError(f"edge {e}: count {state.unprocessed_count[e]} != {live}")
        processed = {ci for ci in state.cycles.incidence[e] if state.processed[ci]}
        truly = {ci for ci in state.cycles.incidence[e] if not live_cycles[ci]}
        if processed != truly:
            raise InvariantError(f"edge {e}: processed flags disagree with removed edges")
    for e in queue:
        ci = state.unprocessed_cycle(e)
        if not live_cycles[ci] or e not in state.cycles.cycles[ci].edges:
            raise InvariantError(f"edge {e}: cycle {ci} is not its surviving cycle")


def check_costs(state: MastState, _extracted: int = -1) -> None:
    """Every queued edge's accumulated cost equals the size of its support."""
    for e in state.queue_contents():
        sup = support(state.g, state.removed, e)
        if state.cost[e] != len(sup):
            raise InvariantError(f"edge {e}: cost {state.cost[e]} != |support| {len(sup)}")


def distortion(g: Graph) -> Fraction:
    """Least distortion of embedding ``g`` into a distribution over its spanning trees."""
    return run_mast(g, recognize(g).unwrap()).average_stretch


__all__ = [
    "InvariantError",
    "MastResult",
    "MastState",
    "MastStats",
    "boundary_edges",
    "check_costs",
    "check_invariants",
    "distortion",
    "run_mast",
    "support",
]
