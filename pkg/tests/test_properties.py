"""Property-based checks over generated polygonal 2-trees and perturbations."""
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from polymast import build_graph
from polymast.cycles import basis_size, induced_cycles, verify_cycle_basis
from polymast.decomposition import recognize, recognize_reference, verify_nice
from polymast.generator import BIASES, GenSpec, generate
from polymast.io import format_edge_list, parse_edge_list
from polymast.mast import distortion, run_mast
from polymast.oracle import brute_force_mast, horton_mcb, oracle_recognizer
from polymast.stretch import fundamental_cycles, total_stretch

SETTINGS = dict(deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def specs(draw, max_n=60):
    lo = draw(st.integers(2, 4))
    return GenSpec(
        target_n=draw(st.integers(3, max_n)),
        seed=draw(st.integers(0, 2**64 - 1)),
        ear_min=lo,
        ear_max=draw(st.integers(lo, 6)),
        bias=draw(st.sampled_from(BIASES)),
    )


@settings(max_examples=150, **SETTINGS)
@given(specs())
def test_structure(spec):
    g, trace = generate(spec)
    assert g.n >= spec.target_n
    assert g.m <= 2 * g.n - 3
    d = recognize(g).unwrap()
    assert d == recognize_reference(g).decomposition
    assert verify_nice(g, d) and verify_nice(g, trace.decomposition)
    assert len(d) == g.m - g.n + 2
    s = induced_cycles(g, d)
    assert len(s) == g.m - g.n + 1
    assert basis_size(s) == 2 * g.m - g.n <= g.m + g.n
    assert verify_cycle_basis(g, s)
    # every edge lies on at least one induced cycle; two cycles share at most one edge
    assert all(len(inc) >= 1 for inc in s.incidence)
    sets = [set(c.edges) for c in s]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            assert len(sets[i] & sets[j]) <= 1


@settings(max_examples=150, **SETTINGS)
@given(specs())
def test_mast_outputs(spec):
    g, _ = generate(spec)
    res = run_mast(g)
    assert len(res.tree) == g.n - 1
    assert total_stretch(g, res.tree) == res.total_stretch
    assert res.average_stretch == Fraction(res.total_stretch, g.m)
    assert res.fcb_size == res.total_stretch - (g.n - 1) + (g.m - g.n + 1)
    assert sum(len(c) for c in fundamental_cycles(g, res.tree)) == res.fcb_size
    assert distortion(g) == res.average_stretch
    assert res.stats.heap_ops <= 3 * g.m
    assert res.stats.cycle_scan_ops <= g.m + g.n
    assert run_mast(g, engine="python").removal_order == res.removal_order


@settings(max_examples=60, **SETTINGS)
@given(specs(max_n=8))
def test_small_against_oracles(spec):
    g, _ = generate(spec)
    if g.m > 24:
        return
    rep = brute_force_mast(g)
    res = run_mast(g, debug=True)
    assert res.total_stretch == rep.min_total_stretch
    assert tuple(res.tree) in rep.optimal_trees
    _, horton = horton_mcb(g)
    fast = induced_cycles(g, recognize(g).unwrap())
    assert {frozenset(c.edges) for c in fast} == {frozenset(c.edges) for c in horton}


@settings(max_examples=80, **SETTINGS)
@given(specs(max_n=9), st.data())
def test_recognizers_agree_after_perturbation(spec, data):
    g, _ = generate(spec)
    edges = list(g.edges)
    present = {frozenset(e) for e in edges}
    missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if frozenset((u, v)) not in present]
    action = data.draw(st.sampled_from(["add", "drop", "both"]))
    if action in ("add", "both") and missing:
        edges.append(data.draw(st.sampled_from(missing)))
    if action in ("drop", "both") and len(edges) > 3:
        edges.pop(data.draw(st.integers(0, len(edges) - 1)))
    h = build_graph(g.n, edges)
    if h.m > 64:
        return
    assert recognize(h).accepted == oracle_recognizer(h)


@settings(max_examples=60, **SETTINGS)
@given(specs(max_n=40), st.randoms(use_true_random=False))
def test_relabelling_keeps_optimum(spec, rnd):
    g, _ = generate(spec)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    rnd.shuffle(edges)
    h = build_graph(g.n, edges)
    assert run_mast(h).total_stretch == run_mast(g).total_stretch
    assert basis_size(induced_cycles(h, recognize(h).unwrap())) == basis_size(
        induced_cycles(g, recognize(g).unwrap())
    )


@settings(max_examples=50, **SETTINGS)
@given(specs())
def test_edge_list_round_trip(spec):
    g, _ = generate(spec)
    text = format_edge_list(g)
    assert format_edge_list(parse_edge_list(text)) == text
