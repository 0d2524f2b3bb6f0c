"""Random and k-gonal polygonal 2-trees, built ear by ear.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014), chosen because
it is a few lines in any language: corpora generated from the same seed are
reproducible across implementations.  Bounded draws use rejection sampling
on the top bits, so they are unbiased.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ._kernels import generate_kernel
from .decomposition import NiceEarDecomposition
from .graph import Graph, build_graph

MASK64 = (1 << 64) - 1
BIASES = ("uniform", "recent", "external")


class SplitMix64:
    """Reference implementation; the generator runs a compiled copy."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound == 1:
            return 0
        bits = (bound - 1).bit_length()
        while True:
            r = self.next_u64() >> (64 - bits)
            if r < bound:
                return r

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)


@dataclass(frozen=True)
class GenSpec:
    """What to generate.

    Ears carry ``ear_min..ear_max`` edges (``ear_min == ear_max`` fixes the
    length, e.g. ``k - 1`` for k-gonal trees).  ``bias`` picks the host edge
    of each new ear: any edge, an edge of the latest ear half of the time,
    or an edge that currently lies on a single polygon.
    """

    target_n: int
    seed: int = 0
    ear_min: int = 2
    ear_max: int = 3
    bias: str = "uniform"
    max_polygons: Optional[int] = None

    def __post_init__(self):
        if self.target_n < 3:
            raise ValueError("target_n must be at least 3")
        if not 2 <= self.ear_min <= self.ear_max:
            raise ValueError("ear lengths must satisfy 2 <= ear_min <= ear_max")
        if self.bias not in BIASES:
            raise ValueError(f"bias must be one of {BIASES}")


@dataclass(frozen=True)
class GenTrace:
    """The ears in the order they were added; a nice ear decomposition of the output."""

    decomposition: NiceEarDecomposition


def generate(spec: GenSpec) -> Tuple[Graph, GenTrace]:
    """Glue ears onto a starting polygon until ``target_n`` vertices exist.

    The starting polygon is the base edge ``(0, 1)`` closed by a path
    ``0, 2, 3, ..., 1``; every later ear runs from ``u`` to ``v`` across a
    host edge ``(u, v)`` through fresh vertices numbered in creation order.
    The same spec always yields the same graph, edge for edge.
    """
    n, tail, head, vflat, voff, eoff, closing = generate_kernel(
        np.uint64(spec.seed & MASK64),
        spec.target_n,
        spec.ear_min,
        spec.ear_max,
        BIASES.index(spec.bias),
        spec.max_polygons or 0,
    )
    g = Graph(int(n), tail, head)
    eflat = np.arange(len(tail), dtype=np.int64)
    return g, GenTrace(NiceEarDecomposition(vflat, voff, eflat, eoff, closing))


def generate_kgonal(k: int, r: int, seed: int = 0, bias: str = "uniform") -> Graph:
    """A k-gonal 2-tree made of ``r`` polygons (k-cycles)."""
    if k < 3 or r < 1:
        raise ValueError("need k >= 3 and r >= 1")
    spec = GenSpec(
        target_n=k + (r - 1) * (k - 2),
        seed=seed,
        ear_min=k - 1,
        ear_max=k - 1,
        bias=bias,
        max_polygons=r,
    )
    g, _ = generate(spec)
    return g


def cycle_graph(n: int) -> Graph:
    """C_n with edges (i, i+1) and finally (n-1, 0)."""
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
