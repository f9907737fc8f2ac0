import pytest
from hypothesis import given, settings, strategies as st

from simpcx.complex import ComplexError, cone, from_facets, simplex, simplex_boundary
from simpcx.fixtures import load_fixture
from simpcx.homology import reduced_homology
from simpcx.knots import (
    GROUPS,
    GroupPresentation,
    KnotCycle,
    TooManyHoms,
    close_cycle,
    complement_complex,
    count_homs,
    cyclic_group,
    knot_group,
    pi1_presentation,
    shortest_path,
    spanning_edges,
    symmetric_group,
    tietze_simplify,
)

S3, S4 = GROUPS["S3"], GROUPS["S4"]
D4 = simplex_boundary(range(1, 6))


def test_knot_cycle_validation():
    with pytest.raises(ComplexError):
        KnotCycle((1, 2))
    with pytest.raises(ComplexError):
        KnotCycle((1, 2, 1))
    K = KnotCycle((3, 1, 2))
    assert K.edges() == [(1, 3), (1, 2), (2, 3)]
    assert str(K) == "3-1-2-3"


def test_spanning_edges_of_known_balls():
    assert (2, 3) in spanning_edges(load_fixture("B_12_38"))
    assert (2, 3) in spanning_edges(load_fixture("B_15_66"))
    assert (1, 3) in spanning_edges(load_fixture("B_17_95_reconstructed"))


def test_cone_has_no_spanning_edges():
    assert spanning_edges(cone(0, simplex_boundary(range(1, 5)))) == []


def test_spanning_edges_rejects_non_balls():
    with pytest.raises(ComplexError):
        spanning_edges(D4)


def test_close_cycle_lengths():
    assert len(close_cycle(load_fixture("B_12_38"), (2, 3))) == 5
    assert len(close_cycle(load_fixture("B_15_66"), (2, 3))) == 6


def test_close_cycle_rejects_boundary_edge():
    B = simplex(range(1, 5))
    with pytest.raises(ComplexError):
        close_cycle(B, (1, 2))


def test_shortest_path_prefers_least_vertices():
    square = from_facets([(1, 2), (2, 3), (3, 4), (1, 4)])
    assert shortest_path(square, 1, 3) == [1, 2, 3]


def test_pi1_of_circle_and_sphere():
    circle = from_facets([(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    P = pi1_presentation(circle)
    assert (P.ngens, P.relators) == (1, [])
    Q = tietze_simplify(pi1_presentation(simplex_boundary(range(1, 5))))
    assert Q.ngens == 0


def test_pi1_of_disconnected_complex_fails():
    with pytest.raises(ComplexError):
        pi1_presentation(from_facets([(1, 2), (3, 4)]))


def test_presentation_rejects_unknown_letters():
    with pytest.raises(ValueError):
        GroupPresentation(1, [(2,)])


def test_tietze_basic_cases():
    assert tietze_simplify(GroupPresentation(2, [(1,), (2,)])).ngens == 0
    P = tietze_simplify(GroupPresentation(2, [(1, 2)]))
    assert (P.ngens, P.relators) == (1, [])


def test_tietze_shrinks_knot_complement():
    S = load_fixture("S_13_56")
    raw = pi1_presentation(complement_complex(S, KnotCycle((1, 2, 3))))
    P = tietze_simplify(raw)
    assert raw.ngens > 20
    assert P.ngens <= 6


def test_count_homs_trefoil_presentation():
    # <x, y | x^2 = y^3>
    P = GroupPresentation(2, [(1, 1, -2, -2, -2)])
    assert count_homs(P, S3) == 12


def test_count_homs_simple_groups():
    assert count_homs(GroupPresentation(1, []), S3) == 6
    assert count_homs(GroupPresentation(1, []), S4) == 24
    assert count_homs(GroupPresentation(0, []), S4) == 1
    assert count_homs(GroupPresentation(2, []), cyclic_group(5)) == 25
    assert count_homs(GroupPresentation(1, [(1, 1, 1)]), symmetric_group(3)) == 3


def test_count_homs_bound():
    with pytest.raises(TooManyHoms):
        count_homs(GroupPresentation(8, []), S4, bound=10**6)


def test_group_tables():
    for G in (S3, S4, cyclic_group(7)):
        e = G.identity
        for a in range(G.order):
            assert G.table[a][e] == a == G.table[e][a]
            assert G.table[a][G.inverse(a)] == e
    assert S3.order == 6 and S4.order == 24


words = st.lists(st.integers(1, 3).flatmap(lambda g: st.sampled_from([g, -g])), max_size=6)


@settings(max_examples=50, deadline=None)
@given(st.lists(words, max_size=3))
def test_tietze_preserves_hom_counts(rels):
    P = GroupPresentation(3, [tuple(r) for r in rels])
    Q = tietze_simplify(P)
    assert count_homs(Q, S3) == count_homs(P, S3)
    assert Q.abelianization() == P.abelianization()


def test_unknot_complement_has_infinite_cyclic_homology():
    C = complement_complex(D4, KnotCycle((1, 2, 3)))
    assert reduced_homology(C).betti[:2] == (0, 1)
    assert knot_group(D4, KnotCycle((1, 2, 3))).ngens == 1


def test_complement_requires_subcomplex():
    S = load_fixture("S_13_56")
    missing = next(e for e in [(a, b) for a in range(1, 14) for b in range(a + 1, 14)] if not S.has_face(e))
    with pytest.raises(ComplexError):
        complement_complex(S, KnotCycle((missing[0], missing[1], next(v for v in S.vertices if v not in missing))))


@pytest.mark.parametrize("name", ["S_13_56", "S_16_92", "S_18_125"])
def test_knot_groups_abelianize_to_z(name):
    P = knot_group(load_fixture(name), KnotCycle((1, 2, 3)))
    assert P.abelianization() == (1, ())


@pytest.mark.parametrize(
    "name,counts",
    [("S_13_56", (12, 96)), ("S_16_92", (30, 432)), ("S_18_125", (84, 2016))],
)
def test_recorded_hom_counts(name, counts):
    P = knot_group(load_fixture(name), KnotCycle((1, 2, 3)))
    assert (count_homs(P, S3), count_homs(P, S4)) == counts


def test_unknot_counts_equal_group_orders():
    P = knot_group(D4, KnotCycle((1, 2, 3)))
    assert (count_homs(P, S3), count_homs(P, S4)) == (6, 24)
