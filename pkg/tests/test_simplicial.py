import pytest

from masseykit.errors import InvalidInput
from masseykit.fields import QQ
from masseykit.generators import cube, polygon
from masseykit.simplicial import (SimplicialComplex, ReducedCohomology,
                                  from_facets, hochster_table, induced,
                                  is_chordal, is_flag, join, skeleton1,
                                  flag_complex, graph_complex)

from oracles import dense_rank


def simplex(m):
    return SimplicialComplex(m, [])


def boundary_of_triangle():
    return SimplicialComplex(3, [(1, 2, 3)])


def test_antichain_validation():
    with pytest.raises(InvalidInput):
        SimplicialComplex(3, [(1,)])
    with pytest.raises(InvalidInput):
        SimplicialComplex(4, [(1, 2), (1, 2, 3)])


def test_faces_and_facets():
    K = polygon(4)
    assert K.minimal_nonfaces == [(1, 3), (2, 4)]
    assert sorted(K.facets()) == [(1, 2), (2, 3), (3, 4), (1, 4)] or \
        sorted(K.facets()) == sorted([(1, 2), (2, 3), (3, 4), (1, 4)])
    assert K.is_face((1, 2)) and not K.is_face((1, 3))


def test_from_facets_roundtrip():
    K = from_facets(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert K.minimal_nonfaces == [(1, 3), (2, 4)]


def test_induced_of_cycle_is_path():
    K = polygon(4)
    P = induced(K, (1, 2, 3))
    # path on 3 vertices: single missing edge {1,3}
    assert P.m == 3
    assert P.minimal_nonfaces == [(1, 3)]


def test_join_of_points():
    two_pts = SimplicialComplex(2, [(1, 2)])
    J = join(two_pts, two_pts)
    assert J.m == 4
    assert J.minimal_nonfaces == [(1, 2), (3, 4)]


def test_is_flag():
    assert is_flag(polygon(4))
    assert not is_flag(boundary_of_triangle())


def test_chordal():
    g6 = skeleton1(polygon(6))
    assert not is_chordal(g6)
    # a tree is chordal
    tree = {1: {2}, 2: {1, 3}, 3: {2}}
    assert is_chordal(tree)
    # complete graph is chordal
    comp = skeleton1(simplex(4))
    assert is_chordal(comp)


def test_reduced_cohomology_examples():
    # two points: H~^0 = k
    two_pts = SimplicialComplex(2, [(1, 2)])
    rc = ReducedCohomology(two_pts, None, QQ)
    assert rc.dim(0) == 1 and rc.dim(-1) == 0
    # empty complex: H~^{-1} = k
    K = simplex(3)
    rc_empty = ReducedCohomology(K, (), QQ)
    assert rc_empty.dim(-1) == 1
    # 6-cycle: H~^1 = k (boundary-matrix rank oracle below)
    hexa = polygon(6)
    rc6 = ReducedCohomology(hexa, None, QQ)
    assert rc6.dim(1) == 1 and rc6.dim(0) == 0
    # oracle: rank of the 0 -> 1 coboundary on the 6-cycle
    verts = list(range(1, 7))
    edges = hexa.faces_of_dim(1)
    rows = []
    for e in edges:
        row = [0] * 6
        row[e[0] - 1] = -1
        row[e[1] - 1] = 1
        rows.append(row)
    rk = dense_rank(rows)
    assert rc6.dim(1) == len(edges) - rk


def test_hochster_two_points():
    two_pts = SimplicialComplex(2, [(1, 2)])
    table = hochster_table(two_pts, QQ)
    nonunit = {k: v for k, v in table.entries.items() if k[1] != ()}
    assert nonunit == {(1, (1, 2)): 1}
    assert table.entries[(0, ())] == 1
    # H^3(Z_K) of the 3-sphere
    assert table.total() == {0: 1, 3: 1}


def test_hochster_simplex():
    table = hochster_table(simplex(3), QQ)
    assert table.entries == {(0, ()): 1}


def test_hochster_4_cycle():
    table = hochster_table(polygon(4), QQ)
    total = table.total()
    # Z_K = S^3 x S^3
    assert total == {0: 1, 3: 2, 6: 1}


def test_hochster_5_cycle():
    table = hochster_table(polygon(5), QQ)
    total = table.total()
    # connected sum of five S^3 x S^4, a 7-manifold
    assert total == {0: 1, 3: 5, 4: 5, 7: 1}


def test_cube_hochster_product_of_spheres():
    for n in (1, 2, 3):
        table = hochster_table(cube(n), QQ)
        total = table.total()
        # (S^3)^n: binomial pattern in degrees 3k
        from math import comb
        want = {3 * k: comb(n, k) for k in range(n + 1)}
        assert total == want


def test_graph_complex_vs_flag_complex():
    edges = [(1, 2), (2, 3), (3, 1)]
    flag = flag_complex(3, edges)
    graph = graph_complex(3, edges)
    assert flag.is_face((1, 2, 3))
    assert not graph.is_face((1, 2, 3))
