"""Reduce S_18_125 by bistellar flips over a range of seeds.

The acceptance suite pins seed 1, which reaches the boundary of the
4-simplex in 94 moves; this script shows how the other seeds fare.

    python scripts/flip_seeds.py --seeds 20 --budget 10000
"""
import argparse
import time

from simpcx.fixtures import load_fixture
from simpcx.flips import is_boundary_of_4_simplex, reduce


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--fixture", default="S_18_125")
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--budget", type=int, default=10_000)
    a = p.parse_args()
    S = load_fixture(a.fixture)
    hits = []
    for seed in range(a.seeds):
        t = time.perf_counter()
        r = reduce(S, seed, a.budget)
        done = is_boundary_of_4_simplex(r.complex)
        if done:
            hits.append((len(r.log), seed))
        print(f"seed {seed:3d}: {r.f_vector} after {len(r.log):5d} moves ({time.perf_counter() - t:.1f}s){'  *' if done else ''}")
    if hits:
        n, seed = min(hits)
        print(f"{len(hits)}/{a.seeds} seeds reach the 5-vertex sphere; shortest log {n} moves (seed {seed})")


if __name__ == "__main__":
    main()
