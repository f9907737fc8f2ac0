"""Distribution of random discrete Morse vectors on a fixture.

    python scripts/morse_search.py S_18_125 --tries 2000
"""
import argparse
from collections import Counter

from simpcx.collapse import random_discrete_morse
from simpcx.fixtures import load_fixture


def main():
    p = argparse.ArgumentParser()
    p.add_argument("fixture", nargs="?", default="S_18_125")
    p.add_argument("--tries", type=int, default=2000)
    p.add_argument("--strategy", default="uniform")
    a = p.parse_args()
    C = load_fixture(a.fixture)
    seen = Counter()
    first = {}
    for seed in range(a.tries):
        vec = random_discrete_morse(C, seed, a.strategy)[1]
        seen[vec] += 1
        first.setdefault(vec, seed)
    for vec, n in seen.most_common():
        print(f"{vec}: {n:6d} ({100 * n / a.tries:.1f}%), first at seed {first[vec]}")


if __name__ == "__main__":
    main()
