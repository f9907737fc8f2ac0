import json

import pytest
from hypothesis import given, settings, strategies as st

from simpcx.complex import ComplexError, _low_dim_kind, manifold_check, simplex, simplex_boundary
from simpcx.fixtures import KNOT_EDGES, data_text, fixture_names, load_fixture
from simpcx.flips import (
    F_DELTA,
    AnnealConfig,
    FlipLog,
    FlipMove,
    ReplayError,
    Triangulation,
    apply_move,
    canonical_hash,
    emit_flp,
    is_boundary_of_4_simplex,
    legal_moves,
    parse_flp,
    random_flips,
    reduce,
    replay,
)

SPHERES = [n for n in fixture_names() if n.startswith("S_")]
D4 = simplex_boundary(range(1, 6))


def test_moves_on_boundary_of_4_simplex():
    ms = legal_moves(D4)
    assert [m.kind for m in ms] == ["1-4"] * 5
    assert {m.new_label for m in ms} == {0}


def test_insert_then_remove_is_identity():
    m = FlipMove("1-4", (1, 2, 3, 4), 6)
    S = apply_move(D4, m)
    assert S.f_vector() == (6, 14, 16, 8)
    assert FlipMove("4-1", (6,)) in legal_moves(S)
    assert apply_move(S, FlipMove("4-1", (6,))) == D4


def test_illegal_moves_name_the_reason():
    with pytest.raises(ComplexError, match="already present"):
        apply_move(D4, FlipMove("2-3", (1, 2, 3)))
    with pytest.raises(ComplexError, match="new label"):
        apply_move(D4, FlipMove("1-4", (1, 2, 3, 4), 5))
    with pytest.raises(ValueError, match="2 vertices"):
        FlipMove("3-2", (1, 2, 3))
    with pytest.raises(ComplexError, match="closed"):
        Triangulation(simplex([1, 2, 3, 4]))


def test_protected_edges_block_moves():
    S = load_fixture("S_18_125")
    free = legal_moves(S, allow_1_4=False)
    kept = legal_moves(S, KNOT_EDGES, allow_1_4=False)
    assert kept and len(kept) < len(free) + 1
    for m in kept:
        if m.kind == "3-2":
            assert m.pivot not in KNOT_EDGES
        if m.kind == "4-1":
            assert m.pivot[0] not in (1, 2, 3)


def test_reduce_boundary_of_4_simplex_is_empty():
    r = reduce(D4, seed=0)
    assert len(r.log) == 0 and r.complex == D4


def test_reduce_s18_with_recorded_seed():
    S = load_fixture("S_18_125")
    r = reduce(S, seed=1, budget=10_000)
    assert is_boundary_of_4_simplex(r.complex)
    assert len(r.log) == 94
    assert canonical_hash(replay(S, r.log)) == r.log.final
    assert emit_flp(parse_flp(emit_flp(r.log))) == emit_flp(r.log)


def test_bundled_log_replays():
    S = load_fixture("S_18_125")
    assert replay(S, parse_flp(data_text("S_18_125_reduce.flp"))).f_vector() == (5, 10, 10, 5)


def test_replay_errors():
    S = load_fixture("S_18_125")
    log = parse_flp(data_text("S_18_125_reduce.flp"))
    assert replay(S, FlipLog(canonical_hash(S), [], canonical_hash(S))) == S
    tampered = FlipLog(log.initial, list(log.moves), log.final)
    tampered.moves[10] = FlipMove("3-2", (1, 2))
    with pytest.raises(ReplayError) as e:
        replay(S, tampered)
    assert e.value.index == 10
    with pytest.raises(ReplayError):
        replay(D4, log)
    truncated = FlipLog(log.initial, log.moves[:-1], log.final)
    with pytest.raises(ReplayError) as e:
        replay(S, truncated)
    assert e.value.index == len(truncated.moves)


def test_protected_edges_survive_reduction():
    S = load_fixture("S_16_92")
    r = reduce(S, seed=0, budget=500, protected=KNOT_EDGES)
    faces = r.complex.faces(1)
    assert all(e in faces for e in KNOT_EDGES)
    assert r.log.protected == tuple(sorted(KNOT_EDGES))
    assert len(r.complex.vertices) >= 6  # a knotted triangle needs more than the 5-vertex sphere


def test_config_round_trip(tmp_path):
    cfg = AnnealConfig(reheat=0.5, plateau=10)
    p = tmp_path / "cfg.json"
    p.write_text(cfg.to_json())
    assert AnnealConfig.from_json(p) == cfg
    p.write_text(json.dumps({"heat": 1}))
    with pytest.raises(ValueError):
        AnnealConfig.from_json(p)


@pytest.mark.parametrize("name", SPHERES)
def test_random_flips_preserve_spheres(name):
    """1000 random legal moves; after each, every vertex near the move has a 2-sphere link."""
    S = load_fixture(name)
    T = None
    f = S.f_vector()
    for m, T in random_flips(S, 1000, seed=7):
        f = tuple(a + b for a, b in zip(f, F_DELTA[m.kind]))
        assert T.f_vector() == f
        near = set(m.pivot) | ({m.new_label} if m.new_label is not None else set())
        near = {x for v in near if v in T.vert for F in T.vert[v] for x in F}
        for v in near:
            assert _low_dim_kind(T.vertex_link(v)) == "sphere"
    assert manifold_check(T.complex()).kind == "3-sphere"


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.integers(1, 40))
def test_random_moves_keep_manifold_and_f_delta(seed, steps):
    S = load_fixture("S_13_56")
    for m, T in random_flips(S, steps, seed=seed):
        pass
    C = T.complex()
    assert manifold_check(C).kind == "3-sphere"
    assert C == apply_all(S, [m for m, _ in random_flips(S, steps, seed=seed)])


def apply_all(S, moves):
    for m in moves:
        S = apply_move(S, m)
    return S
