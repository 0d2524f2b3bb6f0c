"""Shared small graphs.

Figure graphs use letter names; ``Named`` keeps the letter <-> id maps so
tests can talk about ``edge("ab")`` instead of raw ids.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

import pytest

from polymast import Graph, build_graph
from polymast.generator import BIASES, GenSpec, generate, generate_kgonal

# Fig 1(a): ears P0..P10 as vertex strings, vertices numbered alphabetically
FIG1A_EARS = ["ab", "adceb", "afb", "cgd", "che", "bie", "ajd", "akj", "alj", "dmj", "dnj"]
# Fig 1(b) draws the same graph plus a vertex p on an ear across (b, i)
FIG1B_EARS = FIG1A_EARS + ["bpi"]


@dataclass
class Named:
    g: Graph
    vid: Dict[str, int]

    def edge(self, uv: str) -> int:
        e = self.g.edge_id(self.vid[uv[0]], self.vid[uv[1]])
        assert e is not None, uv
        return e

    def edges(self, *names: str) -> List[int]:
        return [self.edge(x) for x in names]

    def name(self, e: int) -> str:
        rev = {v: k for k, v in self.vid.items()}
        u, v = self.g.endpoints(e)
        return "".join(sorted(rev[u] + rev[v]))


def named_from_ears(ears: List[str]) -> Named:
    letters = sorted({c for ear in ears for c in ear})
    vid = {c: i for i, c in enumerate(letters)}
    pairs = [(vid[x], vid[y]) for ear in ears for x, y in zip(ear, ear[1:])]
    return Named(build_graph(len(letters), pairs), vid)


@pytest.fixture
def fig1a() -> Named:
    return named_from_ears(FIG1A_EARS)


@pytest.fixture
def fig1b() -> Named:
    return named_from_ears(FIG1B_EARS)


def k4_minus_e() -> Graph:
    # a=0 b=1 c=2 d=3; edges ab, ac, bc, ad, bd get ids 0..4
    return build_graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])


def k4() -> Graph:
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def theta(a: int = 2, b: int = 2, c: int = 2) -> Graph:
    """Two vertices 0 and 1 joined by three internally disjoint paths."""
    pairs = []
    nxt = 2
    for length in (a, b, c):
        prev = 0
        for _ in range(length - 1):
            pairs.append((prev, nxt))
            prev = nxt
            nxt += 1
        pairs.append((prev, 1))
    return build_graph(nxt, pairs)


def kgonal_corpus() -> Iterator[Tuple[str, Graph]]:
    """Every k-gonal tree for k in 3..5 and r in 1..4 (n reaches 14 for k=5, r=4)."""
    for k in (3, 4, 5):
        for r in range(1, 5):
            yield f"kgonal k={k} r={r}", generate_kgonal(k, r, seed=r)


def random_corpus(count: int = 500, max_n: int = 10) -> Iterator[Tuple[str, Graph]]:
    """``count`` generated trees with ``n <= max_n``; overshooting draws are skipped."""
    made = 0
    s = 0
    while made < count:
        spec = GenSpec(
            target_n=3 + s % (max_n - 2),
            seed=s,
            ear_min=2,
            ear_max=2 + s % 3,
            bias=BIASES[s % 3],
        )
        s += 1
        g, _ = generate(spec)
        if g.n <= max_n:
            made += 1
            yield f"seed={s - 1}", g


def small_corpus(count: int = 500, max_n: int = 10) -> Iterator[Tuple[str, Graph]]:
    yield from kgonal_corpus()
    yield from random_corpus(count, max_n)


def _to_graph(h) -> Graph:
    ids = {v: i for i, v in enumerate(sorted(h.nodes))}
    return build_graph(len(ids), sorted((ids[u], ids[v]) for u, v in h.edges))


def all_polygonal(max_n: int = 9) -> List[Graph]:
    """Every polygonal 2-tree on at most ``max_n`` vertices, one per isomorphism class.

    Each one is a cycle or a smaller one plus an ear across an edge, so growing
    level by level and deduplicating with an exact isomorphism test is complete.
    """
    import networkx as nx

    buckets: Dict[tuple, list] = {}
    order = []

    def add(h) -> bool:
        key = (h.number_of_nodes(), h.number_of_edges(), nx.weisfeiler_lehman_graph_hash(h, iterations=4))
        same = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, o) for o in same):
            return False
        same.append(h)
        order.append(h)
        return True

    frontier = [nx.cycle_graph(k) for k in range(3, max_n + 1)]
    for h in frontier:
        add(h)
    while frontier:
        nxt = []
        for h in frontier:
            n = h.number_of_nodes()
            for u, v in list(h.edges):
                for inner in range(1, max_n - n + 1):
                    e = h.copy()
                    path = [u] + list(range(n, n + inner)) + [v]
                    nx.add_path(e, path)
                    if add(e):
                        nxt.append(e)
        frontier = nxt
    return [_to_graph(h) for h in order]


def k4_subdivision(lengths) -> Graph:
    """K4 with edge i replaced by a path of ``lengths[i]`` edges."""
    pairs = []
    nxt = 4
    for (a, b), length in zip([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], lengths):
        prev = a
        for _ in range(length - 1):
            pairs.append((prev, nxt))
            prev = nxt
            nxt += 1
        pairs.append((prev, b))
    return build_graph(nxt, pairs)


def glue_on_edge(g: Graph, h: Graph, e: int = 0, f: int = 0) -> Graph:
    """Identify edge ``f`` of ``h`` with edge ``e`` of ``g`` (a 2-sum keeping the edge)."""
    gu, gv = g.edges[e]
    hu, hv = h.edges[f]
    ids = {hu: gu, hv: gv}
    nxt = g.n
    for v in range(h.n):
        if v not in ids:
            ids[v] = nxt
            nxt += 1
    pairs = list(g.edges) + [(ids[a], ids[b]) for i, (a, b) in enumerate(h.edges) if i != f]
    return build_graph(nxt, pairs)
