"""Vertex decomposability of barycentric subdivisions.

A VD witness found here is checked independently with verify_vd_tree.

    python scripts/vd_subdivisions.py sd_B_9_18 sd_S_13_56
"""
import argparse
import time

from simpcx.fixtures import load_fixture
from simpcx.hierarchy import is_vertex_decomposable, verify_vd_tree


def main():
    p = argparse.ArgumentParser()
    p.add_argument("fixtures", nargs="*", default=["sd_B_9_18", "sd_S_13_56"])
    p.add_argument("--budget", type=int, default=5_000_000)
    a = p.parse_args()
    for name in a.fixtures:
        C = load_fixture(name)
        t = time.perf_counter()
        d = is_vertex_decomposable(C, a.budget)
        line = f"{name} {C.f_vector()}: {d.verdict.value} after {d.explored} nodes ({time.perf_counter() - t:.1f}s)"
        if d.witness is not None:
            line += "; tree " + ("verified" if verify_vd_tree(C, d.witness).ok else "REJECTED")
        print(line)


if __name__ == "__main__":
    main()
