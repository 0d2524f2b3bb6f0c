import pytest

from polymast import build_graph
from polymast.cycles import (
    Cycle,
    InducedCycleSet,
    basis_size,
    edge_vector,
    gf2_rank,
    induced_cycles,
    minimum_cycle_basis,
    verify_cycle_basis,
)
from polymast.decomposition import NotPolygonalError, recognize
from polymast.generator import BIASES, GenSpec, cycle_graph, generate, generate_kgonal

from conftest import k4_minus_e, theta

# Fig 1(a): one pentagon (P1 with the base edge) and nine triangles
FIG1A_MCB_SIZE = 32


def test_triangle():
    s = minimum_cycle_basis(cycle_graph(3))
    assert len(s) == 1
    assert basis_size(s) == 3
    assert sorted(s[0].vertices(cycle_graph(3))) == [0, 1, 2]


def test_two_triangles():
    g = k4_minus_e()
    s = minimum_cycle_basis(g)
    assert basis_size(s) == 6
    assert {frozenset(c.edges) for c in s} == {frozenset({0, 1, 2}), frozenset({0, 3, 4})}
    assert s.incidence[0] == (0, 1)
    assert s.incidence[2] in ((0,), (1,))


def test_fig1a(fig1a):
    g = fig1a.g
    s = minimum_cycle_basis(g)
    assert len(s) == 10 == g.m - g.n + 1
    assert sorted(len(c) for c in s) == [3] * 9 + [5]
    assert basis_size(s) == FIG1A_MCB_SIZE <= g.m + g.n
    assert verify_cycle_basis(g, s)


def test_cycle_order_is_a_walk(fig1a):
    g = fig1a.g
    for c in minimum_cycle_basis(g):
        vs = c.vertices(g)
        assert len(set(vs)) == len(vs) == len(c)
        for i, e in enumerate(c.edges):
            assert set(g.endpoints(e)) == {vs[i], vs[(i + 1) % len(vs)]}


def test_kgonal_cycles_all_k():
    for k in (3, 4, 5, 8):
        g = generate_kgonal(k, 4, seed=k)
        s = minimum_cycle_basis(g)
        assert [len(c) for c in s] == [k] * 4


def test_rejects_non_polygonal():
    with pytest.raises(NotPolygonalError):
        minimum_cycle_basis(theta())


def test_incidence_index_matches_cycles():
    g, _ = generate(GenSpec(target_n=200, seed=9, bias="external"))
    s = induced_cycles(g, recognize(g).unwrap())
    for e in range(g.m):
        assert s.incidence[e] == tuple(i for i, c in enumerate(s) if e in c.edges)


def test_from_cycles_round_trip():
    s = InducedCycleSet.from_cycles(5, [Cycle((0, 1, 2)), [0, 3, 4]])
    assert [c.edges for c in s] == [(0, 1, 2), (0, 3, 4)]
    assert s.lengths().tolist() == [3, 3]


class TestGF2:
    def test_rank(self):
        assert gf2_rank([0b011, 0b110, 0b101]) == 2
        assert gf2_rank([0b001, 0b010, 0b100]) == 3
        assert gf2_rank([0, 0]) == 0

    def test_dependent_set_rejected(self):
        g = k4_minus_e()
        outer = [1, 2, 4, 3]  # a-c-b-d-a is the sum of the two triangles
        assert not verify_cycle_basis(g, [[0, 1, 2], [0, 3, 4], outer])
        assert not verify_cycle_basis(g, [[0, 1, 2], outer, [0, 1, 2]])
        assert verify_cycle_basis(g, [[0, 1, 2], outer])

    def test_wrong_count_rejected(self):
        assert not verify_cycle_basis(k4_minus_e(), [[0, 1, 2]])

    def test_edge_vector(self):
        assert edge_vector([0, 3]) == 0b1001


def test_generated_bases_independent():
    for s in range(40):
        g, _ = generate(GenSpec(target_n=5 + 3 * s, seed=s, ear_max=4, bias=BIASES[s % 3]))
        b = minimum_cycle_basis(g)
        assert verify_cycle_basis(g, b)
        assert basis_size(b) <= g.m + g.n


def test_path_graph_has_no_cycles():
    with pytest.raises(NotPolygonalError):
        minimum_cycle_basis(build_graph(3, [(0, 1), (1, 2)]))
