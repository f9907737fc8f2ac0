"""Shrink a knotted sphere by flips while keeping the knot edges.

Edges 1 2, 2 3, 1 3 are protected, so the triangle knot survives every move
and the reduced sphere carries the same knot.  Results on one CPU:

    S_33_192, reheat 0.6, plateau 500, seed 0, 30000 steps: (18, 116, 196, 98)
    S_33_192, --allow-1-4, insert_probability 0.2, seed 0, 60000 steps: (18, 115, 194, 97)

Nothing below 18 vertices turned up in these runs.

    python scripts/reduce_knotted.py S_33_192 --seeds 3 --budget 30000 --reheat 0.6 --plateau 500
"""
import argparse
import time
from dataclasses import replace

from simpcx.complex import write_cplx
from simpcx.fixtures import KNOT_EDGES, load_fixture
from simpcx.flips import AnnealConfig, reduce
from simpcx.knots import GROUPS, KnotCycle, count_homs, knot_group


def main():
    p = argparse.ArgumentParser()
    p.add_argument("fixture", nargs="?", default="S_33_192")
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--budget", type=int, default=30_000)
    p.add_argument("--reheat", type=float, default=0.6)
    p.add_argument("--plateau", type=int, default=500)
    p.add_argument("--allow-1-4", action="store_true")
    p.add_argument("--insert-probability", type=float, default=0.05)
    p.add_argument("--out", help="write the smallest sphere found")
    a = p.parse_args()
    cfg = replace(AnnealConfig(), reheat=a.reheat, plateau=a.plateau, insert_probability=a.insert_probability)
    S = load_fixture(a.fixture)
    best = None
    for seed in range(a.seeds):
        t = time.perf_counter()
        r = reduce(S, seed, a.budget, KNOT_EDGES, a.allow_1_4, cfg)
        print(f"seed {seed}: {r.f_vector} ({len(r.log)} moves, {time.perf_counter() - t:.0f}s)", flush=True)
        if best is None or r.f_vector < best.f_vector:
            best = r
    P = knot_group(best.complex, KnotCycle((1, 2, 3)))
    print(f"best {best.f_vector}; homs to S3: {count_homs(P, GROUPS['S3'])}")
    if a.out:
        write_cplx(best.complex, a.out, f"{a.fixture} reduced with protected knot edges")


if __name__ == "__main__":
    main()
