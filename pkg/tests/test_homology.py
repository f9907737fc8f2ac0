import numpy as np
import pytest
from hypothesis import given

from conftest import complexes
from simpcx.complex import ComplexError, SimplicialComplex, cone, from_facets, simplex, simplex_boundary
from simpcx.fixtures import fixture_names, load_fixture
from simpcx.homology import (
    boundary_matrix,
    is_acyclic,
    rank_mod2,
    reduced_betti_mod2,
    reduced_homology,
    smith_invariants,
)

RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
       (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]


def naive_snf(M):
    """Textbook Smith normal form on a list-of-lists integer matrix (independent oracle)."""
    A = [list(r) for r in M]
    m, n = len(A), len(A[0]) if A else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // A[t][t]
                A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    A[t], A[i] = A[i], A[t]
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // A[t][t]
                for r in A:
                    r[j] -= q * r[t]
                if A[t][j]:
                    for r in A:
                        r[t], r[j] = r[j], r[t]
                    done = False
            if done:
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]]
                if bad:
                    i, _ = bad[0]
                    A[t] = [a + b for a, b in zip(A[t], A[i])]
                    done = False
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def oracle_homology(C):
    """Reduced Betti numbers and torsion from the naive SNF of augmented boundary maps."""
    d = C.dim
    faces = {k: sorted(C.faces(k)) for k in range(d + 1)}
    ranks, tors = {}, {}
    for k in range(0, d + 1):
        rows = faces[k - 1] if k > 0 else [()]
        idx = {f: i for i, f in enumerate(rows)}
        M = [[0] * len(faces[k]) for _ in rows]
        for j, f in enumerate(faces[k]):
            for i in range(len(f)):
                g = f[:i] + f[i + 1:]
                M[idx[g]][j] = (-1) ** i
        diag = naive_snf(M) if M and M[0] else []
        ranks[k] = len(diag)
        tors[k - 1] = tuple(x for x in diag if x > 1)
    betti = tuple(len(faces[k]) - ranks[k] - ranks.get(k + 1, 0) for k in range(d + 1))
    return betti, tuple(tors.get(k, ()) for k in range(d + 1))


def test_rp2_has_z2_torsion():
    h = reduced_homology(from_facets(RP2))
    assert h.betti == (0, 0, 0)
    assert h.torsion == ((), (2,), ())
    assert oracle_homology(from_facets(RP2)) == (h.betti, h.torsion)
    assert not is_acyclic(from_facets(RP2))
    assert reduced_betti_mod2(from_facets(RP2)) == (0, 1, 1)


def test_sphere_and_simplex():
    assert reduced_homology(simplex_boundary([1, 2, 3, 4])).betti == (0, 0, 1)
    assert is_acyclic(simplex([1, 2, 3, 4]))
    assert reduced_homology(SimplicialComplex()).is_zero()


def test_triangle_boundary_matrix():
    M = boundary_matrix(simplex([1, 2, 3]), 1).to_dense()
    assert M.shape == (3, 3)
    assert (np.abs(M).sum(axis=0) == 2).all()
    D = boundary_matrix(simplex_boundary([1, 2, 3, 4]), 2)
    assert len(smith_invariants(D.entries, D.shape)) == 3
    with pytest.raises(ComplexError):
        boundary_matrix(simplex([1, 2, 3]), 3)


def test_boundary_squares_to_zero_on_b12():
    B = load_fixture("B_12_38")
    for k in (2, 3):
        assert not (boundary_matrix(B, k - 1).to_dense() @ boundary_matrix(B, k).to_dense()).any()


def test_evasive_subsets_are_acyclic():
    B = load_fixture("B_12_38")
    assert reduced_homology(B.delete_all((4, 5, 8, 10, 11))).is_zero()
    A = B.delete_all((4, 6, 7, 9, 12))
    assert is_acyclic(A)
    assert not any(is_acyclic(A.delete(v)) for v in A.vertices)


def test_smith_invariants_match_oracle():
    M = {(0, 0): 2, (0, 1): 4, (1, 0): 6, (1, 1): 8, (2, 2): 5}
    dense = [[2, 4, 0], [6, 8, 0], [0, 0, 5]]
    assert sorted(smith_invariants(M, (3, 3))) == sorted(naive_snf(dense))


@pytest.mark.parametrize("name", [n for n in fixture_names() if len(load_fixture(n).facets) <= 70])
def test_fixture_homology_matches_oracle(name):
    C = load_fixture(name)
    h = reduced_homology(C)
    assert oracle_homology(C) == (h.betti, h.torsion)


@pytest.mark.parametrize("name", fixture_names())
def test_euler_poincare(name):
    C = load_fixture(name)
    h = reduced_homology(C)
    assert C.euler_characteristic() - 1 == sum((-1) ** k * b for k, b in enumerate(h.betti))


@given(complexes())
def test_boundary_of_boundary_vanishes(C):
    for k in range(2, C.dim + 1):
        assert not (boundary_matrix(C, k - 1).to_dense() @ boundary_matrix(C, k).to_dense()).any()


@given(complexes())
def test_homology_matches_oracle(C):
    h = reduced_homology(C)
    assert oracle_homology(C) == (h.betti, h.torsion)


@given(complexes())
def test_cones_are_acyclic(C):
    assert is_acyclic(cone(100, C))


@given(complexes())
def test_mod2_prefilter_bounds_integer_rank(C):
    h = reduced_homology(C)
    b2 = reduced_betti_mod2(C)
    assert all(x >= y for x, y in zip(b2, h.betti))
    for k in range(1, C.dim + 1):
        D = boundary_matrix(C, k)
        assert rank_mod2(D.entries, D.shape) <= np.linalg.matrix_rank(D.to_dense())
