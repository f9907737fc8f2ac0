"""Knotted spanning edges, knot complements, edge-path groups and homomorphism counts.

A knot is shown to be non-trivial by counting homomorphisms from the knot
group into a small finite group.  The knot group has abelianization Z, so it
admits exactly ``|G|`` homomorphisms with cyclic image into any group ``G``;
any count above ``|G|`` proves that the group is not cyclic, hence that the
knot is not the unknot.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .complex import (
    ComplexError,
    Face,
    SimplicialComplex,
    barycentric_subdivision,
    boundary_complex,
    face_order,
    is_connected,
    manifold_check,
)


@dataclass(frozen=True)
class KnotCycle:
    """A closed edge path, given by its cyclic vertex sequence."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 3 or len(set(self.vertices)) != len(self.vertices):
            raise ComplexError(f"{list(self.vertices)} is not a simple cycle")

    def edges(self) -> list[Face]:
        vs = self.vertices
        return [tuple(sorted((vs[i], vs[(i + 1) % len(vs)]))) for i in range(len(vs))]

    def __len__(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return "-".join(map(str, self.vertices + self.vertices[:1]))


def spanning_edges(B: SimplicialComplex, check: bool = True) -> list[Face]:
    """Interior edges of a 3-ball whose endpoints both lie on the boundary."""
    if check and manifold_check(B).kind != "3-ball":
        raise ComplexError("spanning_edges needs a 3-ball")
    bd = boundary_complex(B)
    bv = set(bd.vertices)
    bedges = bd.faces(1)
    return sorted(e for e in B.faces(1) if e not in bedges and e[0] in bv and e[1] in bv)


def _adjacency(C: SimplicialComplex) -> dict[int, list[int]]:
    adj: dict[int, set[int]] = {v: set() for v in C.vertices}
    for a, b in C.faces(1):
        adj[a].add(b)
        adj[b].add(a)
    return {v: sorted(ns) for v, ns in adj.items()}


def shortest_path(C: SimplicialComplex, a: int, b: int) -> list[int]:
    """Breadth-first search; among shortest paths the lexicographically least wins."""
    adj = _adjacency(C)
    if a not in adj or b not in adj:
        raise ComplexError(f"{a} or {b} is not a vertex")
    # distances from b, then walk greedily from a choosing the least next vertex
    dist = {b: 0}
    q = deque([b])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    if a not in dist:
        raise ComplexError(f"no path from {a} to {b}")
    path = [a]
    while path[-1] != b:
        u = path[-1]
        path.append(min(w for w in adj[u] if dist.get(w) == dist[u] - 1))
    return path


def close_cycle(B: SimplicialComplex, e: Face) -> KnotCycle:
    """Close a spanning edge with a shortest path along the boundary."""
    a, b = sorted(e)
    bd = boundary_complex(B)
    if (a, b) in bd.faces(1) or not B.has_face((a, b)):
        raise ComplexError(f"{a} {b} is not an interior edge")
    return KnotCycle(tuple(shortest_path(bd, a, b)))


def complement_complex(S: SimplicialComplex, K: KnotCycle | None) -> SimplicialComplex:
    """Subdivide S and drop every vertex whose face is a face of K.

    The remaining full subcomplex is the complement of an open regular
    neighbourhood of K, hence homotopy equivalent to |S| - |K|.
    """
    sd = barycentric_subdivision(S)
    if K is None:
        return sd
    kfaces = set((v,) for v in K.vertices) | set(K.edges())
    missing = [f for f in kfaces if not S.has_face(f)]
    if missing:
        raise ComplexError(f"the cycle is not a subcomplex: {sorted(missing)} missing")
    order = face_order(S)
    drop = {i for i, f in enumerate(order) if f in kfaces}
    return sd.delete_all(drop)


# -- presentations -----------------------------------------------------------

Word = tuple[int, ...]  # letters are +-(generator index + 1)


@dataclass
class GroupPresentation:
    ngens: int
    relators: list[Word]

    def __post_init__(self):
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.ngens:
                    raise ValueError(f"letter {x} does not name one of {self.ngens} generators")

    def length(self) -> int:
        return sum(map(len, self.relators))

    def abelianization(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion coefficients) of the abelianized group."""
        from .homology import smith_invariants

        entries: dict = {}
        for i, r in enumerate(self.relators):
            for x in r:
                key = (i, abs(x) - 1)
                entries[key] = entries.get(key, 0) + (1 if x > 0 else -1)
        inv = smith_invariants(entries, (len(self.relators), self.ngens))
        return self.ngens - len(inv), tuple(q for q in inv if q > 1)

    def __str__(self) -> str:
        names = _gen_names(self.ngens)

        def word(r):
            return "".join(names[abs(x) - 1] + ("" if x > 0 else "^-1") for x in r) or "1"

        return "<" + ", ".join(names) + " | " + ", ".join(word(r) for r in self.relators) + ">"


def _gen_names(n: int) -> list[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return [letters[i] if n <= 26 else f"x{i + 1}" for i in range(n)]


def pi1_presentation(C: SimplicialComplex) -> GroupPresentation:
    """Edge-path group: BFS spanning tree from the least vertex, one relator per triangle."""
    if not is_connected(C):
        raise ComplexError("the complex is disconnected")
    adj = _adjacency(C)
    root = C.vertices[0]
    tree: set[Face] = set()
    seen = {root}
    q = deque([root])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                tree.add((min(u, w), max(u, w)))
                q.append(w)
    gens = sorted(e for e in C.faces(1) if e not in tree)
    gid = {e: i + 1 for i, e in enumerate(gens)}
    rels = []
    for a, b, c in sorted(C.faces(2)):
        w = []
        for e, s in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
            if e in gid:
                w.append(s * gid[e])
        rels.append(tuple(w))
    return GroupPresentation(len(gens), rels)


def _free_reduce(w) -> list[int]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    # cyclic reduction
    i, j = 0, len(out) - 1
    while i < j and out[i] == -out[j]:
        i += 1
        j -= 1
    return out[i:j + 1]


def _canonical_cyclic(w: list[int]) -> Word:
    """Least rotation of w or its inverse, so conjugate/inverse relators coincide."""
    if not w:
        return ()
    inv = [-x for x in reversed(w)]
    best = None
    for v in (w, inv):
        for i in range(len(v)):
            r = tuple(v[i:] + v[:i])
            if best is None or r < best:
                best = r
    return best


def tietze_simplify(P: GroupPresentation, budget: int = 100_000, max_relator: int = 400) -> GroupPresentation:
    """Simplify a presentation by Tietze moves.

    Moves: drop trivial and duplicate relators, free and cyclic reduction, and
    eliminate a generator occurring exactly once in some relator by solving
    for it (short relators first).  Elimination is skipped when it would push
    any relator beyond ``max_relator`` letters; ``budget`` caps the number of
    eliminations.
    """
    rels: dict[int, list[int]] = {}
    occ: dict[int, set[int]] = {g: set() for g in range(1, P.ngens + 1)}
    seen: dict[Word, int] = {}
    nid = 0

    def add(w):
        nonlocal nid
        w = _free_reduce(w)
        if not w:
            return
        key = _canonical_cyclic(w)
        if key in seen:
            return
        seen[key] = nid
        rels[nid] = w
        for x in w:
            occ[abs(x)].add(nid)
        heapq.heappush(heap, (len(w), nid))
        nid += 1

    def drop(i):
        w = rels.pop(i)
        del seen[_canonical_cyclic(w)]
        for x in w:
            occ[abs(x)].discard(i)
        return w

    heap: list[tuple[int, int]] = []
    for r in P.relators:
        add(r)
    alive = set(occ)
    steps = 0
    stuck: set[int] = set()
    while heap and steps < budget:
        n, i = heapq.heappop(heap)
        w = rels.get(i)
        if w is None or len(w) != n or i in stuck:
            continue
        counts: dict[int, int] = {}
        for x in w:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        singles = [g for g, c in counts.items() if c == 1]
        if not singles:
            continue
        # eliminate the single generator with the fewest other occurrences
        g = min(singles, key=lambda g: (len(occ[g]), g))
        k = next(p for p, x in enumerate(w) if abs(x) == g)
        rot = w[k:] + w[:k]  # g^e u = 1
        e, u = rot[0], rot[1:]
        repl = [-x for x in reversed(u)] if e > 0 else list(u)
        others = [j for j in occ[g] if j != i]
        if any(len(rels[j]) + (len(repl) - 1) * sum(abs(x) == g for x in rels[j]) > max_relator for j in others):
            stuck.add(i)
            continue
        drop(i)
        for j in others:
            old = drop(j)
            new = []
            for x in old:
                if abs(x) == g:
                    new.extend(repl if x > 0 else [-y for y in reversed(repl)])
                else:
                    new.append(x)
            add(new)
        alive.discard(g)
        steps += 1
        if stuck:
            # lengths changed; give stuck relators another chance
            for j in stuck:
                if j in rels:
                    heapq.heappush(heap, (len(rels[j]), j))
            stuck.clear()
    # renumber surviving generators
    order = sorted(alive)
    ren = {g: k + 1 for k, g in enumerate(order)}
    out = [tuple((1 if x > 0 else -1) * ren[abs(x)] for x in w) for _, w in sorted(rels.items())]
    return GroupPresentation(len(order), sorted(out, key=lambda r: (len(r), r)))


# -- finite groups and homomorphism counting -------------------------------------

@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: tuple[tuple[int, ...], ...]  # table[a][b] = a*b
    identity: int

    @property
    def order(self) -> int:
        return len(self.table)

    def inverse(self, a: int) -> int:
        return next(b for b in range(self.order) if self.table[a][b] == self.identity)


def symmetric_group(n: int) -> FiniteGroup:
    elems = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    # (p*q)(x) = p(q(x))
    table = tuple(tuple(index[tuple(p[q[x]] for x in range(n))] for q in elems) for p in elems)
    return FiniteGroup(f"S{n}", table, index[tuple(range(n))])


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(f"Z{n}", tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0)


GROUPS = {"S3": symmetric_group(3), "S4": symmetric_group(4)}


class TooManyHoms(ValueError):
    pass


def count_homs(P: GroupPresentation, G: FiniteGroup, bound: int = 10**8) -> int:
    """Number of homomorphisms from the presented group to G (backtracking)."""
    g = P.ngens
    if G.order ** g > bound:
        raise TooManyHoms(f"{G.order}^{g} assignments exceed the bound {bound}; simplify the presentation first")
    inv = [G.inverse(a) for a in range(G.order)]
    T = G.table
    # check each relator as soon as its largest generator is assigned
    by_last: dict[int, list[Word]] = {}
    for r in P.relators:
        if r:
            by_last.setdefault(max(abs(x) for x in r), []).append(r)
    img = [0] * (g + 1)

    def holds(r: Word) -> bool:
        a = G.identity
        for x in r:
            a = T[a][img[x] if x > 0 else inv[img[-x]]]
        return a == G.identity

    def rec(k: int) -> int:
        if k > g:
            return 1
        total = 0
        checks = by_last.get(k, ())
        for a in range(G.order):
            img[k] = a
            if all(holds(r) for r in checks):
                total += rec(k + 1)
        return total

    if g == 0:
        return 1  # relators without generators are empty words
    return rec(1)


def knot_group(S: SimplicialComplex, K: KnotCycle, budget: int = 100_000) -> GroupPresentation:
    C = complement_complex(S, K)
    return tietze_simplify(pi1_presentation(C), budget)
