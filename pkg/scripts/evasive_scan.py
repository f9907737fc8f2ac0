"""Which k-subsets of vertices of a ball leave an acyclic deletion?

    python scripts/evasive_scan.py B_12_38 5
"""
import argparse
import time

from simpcx.fixtures import load_fixture
from simpcx.hierarchy import evasiveness_scan


def main():
    p = argparse.ArgumentParser()
    p.add_argument("fixture", nargs="?", default="B_12_38")
    p.add_argument("k", nargs="?", type=int, default=5)
    a = p.parse_args()
    t = time.perf_counter()
    rows = evasiveness_scan(load_fixture(a.fixture), a.k)
    hits = [S for S, acyclic in rows if acyclic]
    for S in hits:
        print(" ".join(map(str, S)))
    print(f"{len(hits)} of {len(rows)} {a.k}-subsets acyclic ({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    main()
