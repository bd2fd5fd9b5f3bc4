import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from morsespike.catalog import dunce_hat
from morsespike.complex import SimplicialComplex, canonical_simplex, facets_of
from morsespike.errors import DimensionOutOfRange, DuplicateVertex, InvalidId, MissingFace

from oracles import brute_betti, f2_rank, random_complex


def full_triangle():
    return SimplicialComplex([(0, 1, 2)], close=True).freeze()


def circle():
    return SimplicialComplex([(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)]).freeze()


def test_add_vertex_to_empty():
    cx = SimplicialComplex()
    assert cx.add_simplex([0]) == 0
    assert cx.dims[0] == 0 and cx.dim == 0


def test_add_edge_after_vertices():
    cx = SimplicialComplex([(0,), (1,)])
    sid = cx.add_simplex([1, 0])
    assert sid == 2
    assert [cx.simplices[f] for f in cx.faces[sid]] == [(0,), (1,)]


def test_auto_close_triangle_has_seven_simplices():
    cx = SimplicialComplex()
    cx.add_simplex((0, 1, 2), close=True)
    assert len(cx) == 7
    assert cx.f_vector() == (3, 3, 1)


def test_add_is_idempotent():
    cx = SimplicialComplex([(0,), (1,), (0, 1)])
    assert cx.add_simplex((0, 1)) == 2
    assert len(cx) == 3


def test_strict_mode_missing_face():
    with pytest.raises(MissingFace) as info:
        SimplicialComplex().add_simplex((0, 1))
    assert info.value.face in {(0,), (1,)}


@pytest.mark.parametrize("bad", [(0, 0), (), (-1,)])
def test_duplicate_or_bad_vertices(bad):
    with pytest.raises(DuplicateVertex):
        canonical_simplex(bad)


def test_frozen_complex_rejects_new_simplices():
    cx = full_triangle()
    with pytest.raises(ValueError):
        cx.add_simplex((3,))
    assert cx.add_simplex((0, 1)) == cx.index((0, 1))


def test_euler_characteristic_examples():
    assert SimplicialComplex([(0,)]).euler_characteristic() == 1
    sphere = SimplicialComplex(combinations(range(4), 3), close=True)
    assert sphere.f_vector() == (4, 6, 4)
    assert sphere.euler_characteristic() == 2
    hat = dunce_hat()
    assert hat.f_vector() == (8, 24, 17)
    assert hat.euler_characteristic() == 1


def test_dunce_hat_homology_and_edge_degrees():
    hat = dunce_hat()
    assert brute_betti(hat.simplices, 2) == (1, 0, 0)
    degree = {hat.simplices[e]: len(hat.cofaces[e]) for e in hat.ids_of_dim(1)}
    assert {e for e, d in degree.items() if d == 3} == {(0, 1), (0, 2), (1, 2)}
    # no free edge anywhere
    assert all(d >= 2 for d in degree.values())


def test_boundary_matrix_triangle():
    cx = full_triangle()
    d1 = cx.boundary_matrix(1).toarray()
    assert d1.shape == (3, 3)
    assert (d1.sum(axis=0) == 2).all()
    d2 = cx.boundary_matrix(2).toarray()
    assert d2.shape == (3, 1) and (d2 == 1).all()


def test_boundary_matrix_circle_rank():
    assert f2_rank(circle().boundary_matrix(1).toarray()) == 2


@pytest.mark.parametrize("k", [0, 3])
def test_boundary_matrix_out_of_range(k):
    with pytest.raises(DimensionOutOfRange):
        full_triangle().boundary_matrix(k)


def test_hasse_successors():
    cx = full_triangle()
    assert cx.hasse_successors(cx.index((0,))) == []
    edge = cx.index((0, 1))
    assert [cx.simplices[i] for i in cx.hasse_successors(edge)] == [(0,), (1,)]
    tri = cx.index((0, 1, 2))
    assert sorted(cx.simplices[i] for i in cx.hasse_successors(tri)) == [(0, 1), (0, 2), (1, 2)]
    assert sorted(cx.hasse_predecessors(cx.index((2,)))) == sorted([cx.index((0, 2)), cx.index((1, 2))])


def test_invalid_id():
    cx = full_triangle()
    with pytest.raises(InvalidId):
        cx.hasse_successors(99)
    with pytest.raises(InvalidId):
        cx.index((5,))


def test_facets_in_lex_order():
    assert facets_of((0, 1, 2)) == [(0, 1), (0, 2), (1, 2)]
    assert facets_of((3,)) == []


def test_prefix_keeps_ids():
    cx = full_triangle()
    sub = cx.prefix(4)
    assert sub.simplices == cx.simplices[:4]
    assert sub.frozen


def _check_structure(cx):
    index = set(cx.simplices)
    for sid, s in enumerate(cx.simplices):
        # closure by full subset enumeration
        for k in range(1, len(s)):
            for sub in combinations(s, k):
                assert sub in index
        assert len(cx.faces[sid]) == (len(s) if len(s) > 1 else 0)
        for f in cx.faces[sid]:
            assert f < sid
            assert sid in cx.cofaces[f]
        for c in cx.cofaces[sid]:
            assert sid in cx.faces[c]
    for k in range(2, cx.dim + 1):
        prod = (cx.boundary_matrix(k - 1).toarray().astype(int) @ cx.boundary_matrix(k).toarray().astype(int)) % 2
        assert not prod.any()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_structure_invariants_random(seed):
    rng = random.Random(seed)
    cx = random_complex(rng, n_vertices=7, max_dim=3, n_facets=5, cap=200)
    _check_structure(cx)
    assert cx.check_closure()


def test_structure_invariants_dunce_hat():
    _check_structure(dunce_hat())


def test_boundary_matrix_matches_oracle():
    from oracles import dense_boundary

    cx = dunce_hat()
    got = cx.boundary_matrix(2).toarray()
    want = dense_boundary(cx.simplices, 2)
    # same row/column orders: both ascending by vertex tuple within a dimension
    rows = sorted(cx.ids_of_dim(1), key=lambda i: cx.simplices[i])
    cols = sorted(cx.ids_of_dim(2), key=lambda i: cx.simplices[i])
    pos_r = {sid: i for i, sid in enumerate(cx.ids_of_dim(1))}
    pos_c = {sid: i for i, sid in enumerate(cx.ids_of_dim(2))}
    reordered = got[np.ix_([pos_r[r] for r in rows], [pos_c[c] for c in cols])]
    assert np.array_equal(reordered, want)
