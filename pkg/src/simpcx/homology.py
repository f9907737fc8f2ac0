"""Integer simplicial homology through Smith normal form.

Boundary matrices are kept sparse.  The Smith invariants of a matrix are found
by first pivoting on unit entries (cheapest Markowitz-style pivot in the
sparsest column first), which settles almost all of a simplicial boundary
matrix, and then running a dense Smith reduction with Python integers on
whatever is left.  Python integers never overflow, so the arithmetic is exact.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd

import numpy as np

from .complex import ComplexError, SimplicialComplex


@dataclass(frozen=True)
class BoundaryMatrix:
    k: int
    rows: tuple  # (k-1)-faces, row order
    cols: tuple  # k-faces, column order
    entries: dict  # (row, col) -> +-1

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_dense(self) -> np.ndarray:
        M = np.zeros(self.shape, dtype=np.int64)
        for (i, j), v in self.entries.items():
            M[i, j] = v
        return M


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integer homology: ``betti[i]`` and ``torsion[i]`` describe H~_i."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    minus_one: int = 0  # rank of H~_{-1}; 1 only for the irrelevant complex {∅}

    def is_zero(self) -> bool:
        return self.minus_one == 0 and not any(self.betti) and not any(self.torsion)

    def __str__(self) -> str:
        parts = []
        for b, t in zip(self.betti, self.torsion):
            terms = ([f"Z^{b}" if b > 1 else "Z"] if b else []) + [f"Z/{q}" for q in t]
            parts.append(" + ".join(terms) or "0")
        return "(" + ", ".join(parts) + ")"


def _faces_sorted(C: SimplicialComplex, k: int) -> list:
    return sorted(C.faces(k))


def boundary_matrix(C: SimplicialComplex, k: int) -> BoundaryMatrix:
    if not 1 <= k <= C.dim:
        raise ComplexError(f"boundary matrix index {k} out of range 1..{C.dim}")
    rows = _faces_sorted(C, k - 1)
    cols = _faces_sorted(C, k)
    index = {f: i for i, f in enumerate(rows)}
    entries = {}
    for j, f in enumerate(cols):
        for i in range(len(f)):
            entries[(index[f[:i] + f[i + 1:]], j)] = -1 if i % 2 else 1
    return BoundaryMatrix(k, tuple(rows), tuple(cols), entries)


# -- Smith normal form ------------------------------------------------------

def _dense_invariants(M: list[list[int]]) -> list[int]:
    """Nonzero Smith invariants of a dense integer matrix (destroys ``M``)."""
    diag = []
    m = len(M)
    n = len(M[0]) if m else 0
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        M[t], M[i] = M[i], M[t]
        if j != t:
            for row in M:
                row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            done = True
            for i in range(t + 1, m):
                a = M[i][t]
                if a:
                    q = a // p
                    ri, rt = M[i], M[t]
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if ri[t]:
                        done = False
            rt = M[t]
            for j in range(t + 1, n):
                a = rt[j]
                if a:
                    q = a // p
                    for row in M:
                        if row[t]:
                            row[j] -= q * row[t]
                    if rt[j]:
                        done = False
            if done:
                break
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
            cand += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
            _, i, j = min(cand)
            M[t], M[i] = M[i], M[t]
            if j != t:
                for row in M:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    # turn the diagonal into a divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a * b // g
    return diag


def smith_invariants(entries: dict, shape: tuple[int, int]) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix given as ``{(i, j): v}``."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in entries.items():
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
    units = 0
    heap = [(len(s), j) for j, s in cols.items()]
    heapq.heapify(heap)
    stalled: set[int] = set()
    while heap:
        size, j = heapq.heappop(heap)
        col = cols.get(j)
        if not col:
            continue
        if size != len(col):
            heapq.heappush(heap, (len(col), j))
            continue
        pivot_row = None
        for i in col:
            if abs(rows[i][j]) == 1 and (pivot_row is None or len(rows[i]) < len(rows[pivot_row])):
                pivot_row = i
        if pivot_row is None:
            stalled.add(j)
            continue
        stalled.discard(j)
        prow = rows.pop(pivot_row)
        p = prow[j]
        for jj in prow:
            cols[jj].discard(pivot_row)
        for i in list(col):
            row = rows[i]
            q = row[j] * p  # p = +-1, so row[j]/p == row[j]*p
            for jj, v in prow.items():
                nv = row.get(jj, 0) - q * v
                if nv:
                    if jj not in row:
                        cols[jj].add(i)
                    row[jj] = nv
                elif jj in row:
                    del row[jj]
                    cols[jj].discard(i)
            if not row:
                del rows[i]
        del cols[j]
        units += 1
        for jj in prow:
            if jj in cols:
                if cols[jj]:
                    heapq.heappush(heap, (len(cols[jj]), jj))
                    stalled.discard(jj)
                else:
                    del cols[jj]
        if not heap and stalled:
            # eliminations may have produced new unit entries
            for jj in list(stalled):
                if jj in cols and any(abs(rows[i][jj]) == 1 for i in cols[jj]):
                    heapq.heappush(heap, (len(cols[jj]), jj))
                    stalled.discard(jj)
    live_rows = sorted(i for i, r in rows.items() if r)
    live_cols = sorted(j for j, s in cols.items() if s)
    if not live_rows:
        return [1] * units
    cidx = {j: n for n, j in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for r, i in enumerate(live_rows):
        for j, v in rows[i].items():
            dense[r][cidx[j]] = v
    return [1] * units + _dense_invariants(dense)


def rank_mod2(entries: dict, shape: tuple[int, int]) -> int:
    """Rank over GF(2), rows packed into integers."""
    rows: dict[int, int] = {}
    for (i, j), v in entries.items():
        if v % 2:
            rows[i] = rows.get(i, 0) ^ (1 << j)
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows.values():
        while r:
            low = r & -r
            if low in pivots:
                r ^= pivots[low]
            else:
                pivots[low] = r
                rank += 1
                break
    return rank


def _augmented_entries(C: SimplicialComplex, k: int) -> tuple[dict, tuple[int, int], int]:
    """Entries and shape of the reduced boundary map from k-chains to (k-1)-chains."""
    if k == 0:
        n = len(C.faces(0))
        return {(0, j): 1 for j in range(n)}, (1, n), n
    B = boundary_matrix(C, k)
    return B.entries, B.shape, len(B.cols)


def reduced_homology(C: SimplicialComplex) -> HomologyProfile:
    if C.is_void:
        return HomologyProfile((), ())
    if C.is_irrelevant:
        return HomologyProfile((), (), minus_one=1)
    d = C.dim
    ranks = []
    torsion = []
    sizes = []
    for k in range(d + 1):
        entries, shape, n = _augmented_entries(C, k)
        inv = smith_invariants(entries, shape)
        ranks.append(len(inv))
        torsion.append(tuple(q for q in inv if q > 1))
        sizes.append(n)
    ranks.append(0)
    torsion.append(())
    betti = tuple(sizes[k] - ranks[k] - ranks[k + 1] for k in range(d + 1))
    return HomologyProfile(betti, tuple(torsion[k + 1] for k in range(d + 1)))


def reduced_betti_mod2(C: SimplicialComplex) -> tuple[int, ...]:
    if C.dim < 0:
        return ()
    ranks, sizes = [], []
    for k in range(C.dim + 1):
        entries, shape, n = _augmented_entries(C, k)
        ranks.append(rank_mod2(entries, shape))
        sizes.append(n)
    ranks.append(0)
    return tuple(sizes[k] - ranks[k] - ranks[k + 1] for k in range(C.dim + 1))


def is_acyclic(C: SimplicialComplex) -> bool:
    """True iff all reduced integer homology groups vanish (the void complex counts as acyclic)."""
    if C.is_irrelevant:
        return False
    if C.is_void:
        return True
    if C.is_simplex:
        return True
    if any(reduced_betti_mod2(C)):
        return False
    return reduced_homology(C).is_zero()
