from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import complexes
from simpcx.complex import (
    ComplexError,
    SimplicialComplex,
    barycentric_subdivision,
    boundary_complex,
    closed_star,
    cone,
    delete,
    emit_cplx,
    f_vector,
    from_facets,
    link,
    manifold_check,
    parse_cplx,
    simplex,
    simplex_boundary,
)
from simpcx.fixtures import load_fixture
from simpcx.homology import reduced_homology


def test_from_facets_absorbs_dominated_faces():
    C = from_facets([[1, 2], [1, 2, 3]])
    assert C.facets == ((1, 2, 3),)
    assert from_facets([[1, 2, 3, 4]]).f_vector() == (4, 6, 4, 1)


def test_from_facets_rejects_repeated_vertex():
    with pytest.raises(ComplexError, match="repeats vertex 1"):
        from_facets([[1, 1, 2]])


def test_void_and_irrelevant_are_distinct():
    void = from_facets([])
    assert void.is_void and not void.is_irrelevant
    tet = simplex([1, 2, 3, 4])
    irr = tet.link((1, 2, 3, 4))
    assert irr.is_irrelevant and not irr.is_void
    assert void != irr


def test_f_vectors_of_small_examples():
    assert f_vector(simplex_boundary([1, 2, 3, 4])) == (4, 6, 4)
    assert f_vector(load_fixture("S_16_92")) == (16, 108, 184, 92)
    assert f_vector(load_fixture("S_18_125")) == (18, 143, 250, 125)


def test_boundary_complex():
    assert boundary_complex(load_fixture("S_16_92")).is_void
    assert len(boundary_complex(load_fixture("B_12_38")).facets) == 18
    with pytest.raises(ComplexError):
        boundary_complex(SimplicialComplex([(1, 2, 3), (3, 4)]))


def test_boundary_of_cone_over_sphere_is_the_sphere():
    S = simplex_boundary([1, 2, 3, 4])
    assert boundary_complex(cone(0, S)) == S


def test_link_in_rudin_ball():
    R = load_fixture("R_14_41")
    assert manifold_check(cone(99, R.link((3,)))).kind == "3-ball"  # cone over a 2-ball
    expected = {(2, 8, 14), (2, 10, 14), (5, 8, 12), (7, 11, 12), (8, 11, 12), (8, 13, 14), (10, 13, 14), (5, 8, 13)}
    assert set(R.delete(3).link((4,)).facets) == expected


def test_link_of_missing_face_raises():
    with pytest.raises(ComplexError):
        link(simplex([1, 2, 3]), (4,))
    with pytest.raises(ComplexError):
        delete(simplex([1, 2, 3]), 7)


def test_deleting_6_from_b7_is_not_pure():
    D = load_fixture("B_7_10").delete(6)
    assert set(D.facets) == {(0, 1, 2), (0, 1, 3, 4), (0, 2, 3, 5), (1, 2, 4, 5)}
    assert not D.is_pure


def test_star_of_vertex_1_in_s16():
    S = load_fixture("S_16_92")
    star = closed_star(S, 1)
    assert len(star.facets) == 26
    assert len(S.delete(1).facets) == 66
    assert closed_star(simplex([1, 2, 3, 4]), 2) == simplex([1, 2, 3, 4])


def test_cone_identities():
    C = SimplicialComplex([(1, 2), (2, 3), (3, 4, 5)])
    K = cone(0, C)
    assert K.link((0,)) == C
    assert K.delete(0) == C
    assert closed_star(K, 0) == K
    with pytest.raises(ComplexError):
        cone(1, C)
    assert len(cone(0, simplex_boundary([1, 2, 3])).facets) == 3


def test_coned_balls_match_the_spheres():
    S13 = load_fixture("B_12_38").union(cone(1, boundary_complex(load_fixture("B_12_38"))))
    assert (len(S13.vertices), len(S13.facets)) == (13, 56)
    B = load_fixture("B_43_214")
    assert B.union(cone(44, boundary_complex(B))).f_vector() == (44, 328, 568, 284)


def test_subdivision_sizes():
    sd = barycentric_subdivision(simplex([1, 2, 3, 4]))
    assert (len(sd.vertices), len(sd.facets)) == (15, 24)
    sd = barycentric_subdivision(simplex_boundary([1, 2, 3, 4]))
    assert (len(sd.vertices), len(sd.facets)) == (14, 24)
    B = load_fixture("B_12_38")
    assert len(barycentric_subdivision(B).vertices) == sum(B.f_vector())


def test_subdivision_labels_are_deterministic():
    C = SimplicialComplex([(3, 5, 9), (5, 9, 11)])
    assert barycentric_subdivision(C) == barycentric_subdivision(SimplicialComplex([(11, 9, 5), (9, 5, 3)]))


def test_manifold_check_classifies():
    assert manifold_check(simplex_boundary(range(5))).kind == "3-sphere"
    assert manifold_check(load_fixture("S_33_192")).kind == "3-sphere"
    assert manifold_check(load_fixture("B_15_66")).kind == "3-ball"
    # three tetrahedra around one triangle
    bad = SimplicialComplex([(1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 3, 6)])
    rep = manifold_check(bad)
    assert rep.kind == "other" and any("[1, 2, 3]" in p for p in rep.problems)
    assert manifold_check(SimplicialComplex([(1, 2, 3, 4), (5, 6, 7, 8)])).kind == "other"


def test_cplx_round_trip_with_comments():
    text = "# a comment\n1 2 3\n\n2 3 4\n"
    C = parse_cplx(text)
    assert parse_cplx(emit_cplx(C, "x\ny")) == C
    with pytest.raises(ComplexError):
        parse_cplx("1 2 x\n")


@given(complexes())
def test_round_trip_is_identity(C):
    assert parse_cplx(emit_cplx(C)) == C
    assert emit_cplx(parse_cplx(emit_cplx(C))) == emit_cplx(C)


@given(complexes())
def test_facets_form_an_antichain(C):
    for F, G in combinations(C.facets, 2):
        assert not set(F) <= set(G) and not set(G) <= set(F)


@given(complexes())
def test_faces_closed_under_subsets(C):
    faces = C.faces()
    for f in faces:
        for k in range(1, len(f)):
            for g in combinations(f, k):
                assert g in faces


@given(complexes(), st.data())
def test_link_delete_face_counts(C, data):
    """f(C) = f(del v) + f(cone over link) - f(link), dimension by dimension."""
    v = data.draw(st.sampled_from(C.vertices))
    L, D = C.link((v,)), C.delete(v)
    star = cone(v, L) if not L.is_irrelevant else simplex([v])

    def f(X, k):
        return len(X.faces(k)) if not X.is_void else 0

    for k in range(C.dim + 1):
        assert f(C, k) == f(D, k) + f(star, k) - (f(L, k) if not L.is_irrelevant else 0)


@given(complexes(max_facets=4, max_vertices=6))
def test_subdivision_keeps_homology(C):
    assert reduced_homology(barycentric_subdivision(C)) == reduced_homology(C)
