"""Non-evasiveness, vertex decomposability, shellability and constructibility.

Every decision procedure returns a :class:`Decision` whose verdict is one of
``true``, ``false`` or ``inconclusive``.  ``false`` is only reported when the
(pruned) search space was exhausted; running out of budget always gives
``inconclusive``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Union

from .complex import (
    ComplexError,
    Face,
    SimplicialComplex,
    _low_dim_kind,
    format_face,
    manifold_check,
    parse_face_list,
)
from .homology import is_acyclic, reduced_homology


class Verdict(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"


@dataclass
class Decision:
    verdict: Verdict
    witness: object = None  # decision tree, shelling order, ...
    explored: int = 0

    def __bool__(self) -> bool:
        return self.verdict is Verdict.TRUE


class _Exhausted(Exception):
    pass


class _Budget:
    __slots__ = ("left", "used")

    def __init__(self, n: int):
        self.left = n
        self.used = 0

    def spend(self):
        self.used += 1
        self.left -= 1
        if self.left < 0:
            raise _Exhausted


# -- decision trees ---------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    """Base case: a simplex (one facet) or, for VD trees, a set of points."""

    facets: tuple[Face, ...]


@dataclass(frozen=True)
class Node:
    vertex: int
    link: "Tree"
    deletion: "Tree"


Tree = Union[Leaf, Node]


def tree_size(t: Tree) -> int:
    if isinstance(t, Leaf):
        return 1
    return 1 + tree_size(t.link) + tree_size(t.deletion)


def deletion_order(t: Tree) -> list[int]:
    """Vertices along the deletion spine of a tree."""
    out = []
    while isinstance(t, Node):
        out.append(t.vertex)
        t = t.deletion
    return out


def emit_tree(t: Tree) -> str:
    lines: list[str] = []

    def walk(t: Tree, depth: int):
        pad = "  " * depth
        if isinstance(t, Leaf):
            lines.append(pad + "leaf " + ", ".join(format_face(f) for f in t.facets))
            return
        lines.append(f"{pad}node {t.vertex}")
        lines.append(pad + "  link")
        walk(t.link, depth + 2)
        lines.append(pad + "  del")
        walk(t.deletion, depth + 2)

    walk(t, 0)
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> Tree:
    rows = []
    for n, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip(" "))
        if indent % 2:
            raise ComplexError(f"line {n}: odd indentation")
        rows.append((indent // 2, raw.strip(), n))
    pos = 0

    def take(depth: int) -> Tree:
        nonlocal pos
        if pos >= len(rows):
            raise ComplexError("unexpected end of tree")
        d, text, n = rows[pos]
        if d != depth:
            raise ComplexError(f"line {n}: expected indentation level {depth}")
        pos += 1
        word, _, rest = text.partition(" ")
        if word == "leaf":
            return Leaf(tuple(sorted(parse_face_list(rest))))
        if word != "node":
            raise ComplexError(f"line {n}: expected 'node' or 'leaf', got {word!r}")
        v = int(rest)
        kids = {}
        for label in ("link", "del"):
            if pos >= len(rows) or rows[pos][:2] != (depth + 1, label):
                raise ComplexError(f"line {rows[pos][2] if pos < len(rows) else n}: expected '{label}'")
            pos += 1
            kids[label] = take(depth + 2)
        return Node(v, kids["link"], kids["del"])

    t = take(0)
    if pos != len(rows):
        raise ComplexError(f"line {rows[pos][2]}: trailing content")
    return t


def read_tree(path: str | Path) -> Tree:
    return parse_tree(Path(path).read_text())


@dataclass
class TreeCheck:
    ok: bool
    path: str = ""
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _is_points(C: SimplicialComplex) -> bool:
    return C.dim == 0


def _check_tree(C: SimplicialComplex, t: Tree, path: str, vd: bool) -> TreeCheck:
    if isinstance(t, Leaf):
        if C.facets != tuple(sorted(t.facets)):
            return TreeCheck(False, path, "leaf does not match the complex reached")
        if C.is_simplex or (vd and _is_points(C)):
            return TreeCheck(True)
        return TreeCheck(False, path, "leaf is neither a simplex nor a set of points" if vd else "leaf is not a simplex")
    v = t.vertex
    if v not in C.vertices:
        return TreeCheck(False, path, f"vertex {v} is not in the complex")
    if C.is_simplex and not vd:
        # expanding a simplex further is legal as long as it bottoms out
        pass
    L, D = C.link((v,)), C.delete(v)
    if D.is_void:
        return TreeCheck(False, path, f"deleting {v} leaves nothing")
    if vd and (not D.is_pure or D.dim != C.dim):
        return TreeCheck(False, path, f"deletion of {v} is not pure of dimension {C.dim}")
    r = _check_tree(L, t.link, f"{path}/link({v})", vd)
    if not r:
        return r
    return _check_tree(D, t.deletion, f"{path}/del({v})", vd)


def verify_ne_tree(C: SimplicialComplex, tree: Tree) -> TreeCheck:
    """Replay an NE decision tree; reports the path to the first bad node."""
    return _check_tree(C, tree, "", vd=False)


def verify_vd_tree(C: SimplicialComplex, tree: Tree) -> TreeCheck:
    return _check_tree(C, tree, "", vd=True)


# -- non-evasiveness ----------------------------------------------------------------

def _cone_point(C: SimplicialComplex) -> int | None:
    common = set(C.facets[0]) if C.facets else set()
    for F in C.facets[1:]:
        common.intersection_update(F)
        if not common:
            return None
    return min(common) if common else None


def _cone_tree(C: SimplicialComplex, apex: int) -> Tree:
    """Cones are non-evasive: peel off the other vertices one by one."""
    if C.is_simplex:
        return Leaf(C.facets)
    w = next(v for v in C.vertices if v != apex)
    return Node(w, _cone_tree(C.link((w,)), apex), _cone_tree(C.delete(w), apex))


class _NESearch:
    def __init__(self, budget: int):
        self.budget = _Budget(budget)
        self.memo: dict[SimplicialComplex, Tree | None] = {}
        self.acyc: dict[SimplicialComplex, bool] = {}

    def acyclic(self, C: SimplicialComplex) -> bool:
        r = self.acyc.get(C)
        if r is None:
            r = self.acyc[C] = is_acyclic(C)
        return r

    def run(self, C: SimplicialComplex) -> Tree | None:
        if C.is_simplex:
            return Leaf(C.facets)
        if C in self.memo:
            return self.memo[C]
        self.budget.spend()
        apex = _cone_point(C)
        if apex is not None:
            t = self.memo[C] = _cone_tree(C, apex)
            return t
        result = None
        if self.acyclic(C):
            cands = sorted(C.vertices, key=lambda v: (sum(1 for F in C.facets if v in F), v))
            for v in cands:
                L = C.link((v,))
                if not self.acyclic(L):
                    continue
                D = C.delete(v)
                if not self.acyclic(D):
                    continue
                tl = self.run(L)
                if tl is None:
                    continue
                td = self.run(D)
                if td is not None:
                    result = Node(v, tl, td)
                    break
        self.memo[C] = result
        return result


def is_nonevasive(C: SimplicialComplex, budget: int = 200_000) -> Decision:
    """Exhaustive search for an NE decision tree, pruned by integer acyclicity."""
    if C.is_void or C.is_irrelevant:
        return Decision(Verdict.FALSE)
    s = _NESearch(budget)
    try:
        t = s.run(C)
    except _Exhausted:
        return Decision(Verdict.INCONCLUSIVE, None, s.budget.used)
    if t is None:
        return Decision(Verdict.FALSE, None, s.budget.used)
    return Decision(Verdict.TRUE, t, s.budget.used)


def tree_from_deletion_order(C: SimplicialComplex, order: Iterable[int], budget: int = 200_000) -> Tree:
    """NE tree that deletes ``order`` in turn; link subtrees are found by search."""
    order = list(order)
    if C.is_simplex and not order:
        return Leaf(C.facets)
    if not order:
        raise ComplexError(f"deletion order ends at a non-simplex {C.facets}")
    v = order[0]
    if C.is_simplex and C.vertices == (v,):
        return Leaf(C.facets)
    L = C.link((v,))
    d = is_nonevasive(L, budget)
    if not d:
        raise ComplexError(f"link of {v} is not non-evasive ({d.verdict.value})")
    return Node(v, d.witness, tree_from_deletion_order(C.delete(v), order[1:], budget))


# -- evasiveness scan -----------------------------------------------------------------

def evasiveness_scan(C: SimplicialComplex, k: int) -> list[tuple[tuple[int, ...], bool]]:
    """For each k-subset S of vertices (lexicographic), is C minus S acyclic?"""
    vs = C.vertices
    if k > len(vs):
        raise ComplexError(f"subset size {k} exceeds the {len(vs)} vertices")
    return [(S, is_acyclic(C.delete_all(S))) for S in combinations(vs, k)]


# -- vertex decomposability -----------------------------------------------------------------

def _homology_top_only(C: SimplicialComplex) -> bool:
    """VD complexes are wedges of top-dimensional spheres."""
    if C.dim <= 0:
        return True
    h = reduced_homology(C)
    return not any(h.betti[:-1]) and not any(h.torsion)


def _boundary_vertices(C: SimplicialComplex) -> set[int]:
    """Vertices on ridges that lie in exactly one facet."""
    count: dict[Face, int] = {}
    for F in C.facets:
        for i in range(len(F)):
            r = F[:i] + F[i + 1:]
            count[r] = count.get(r, 0) + 1
    return {v for r, n in count.items() if n == 1 for v in r}


def _still_ball(C: SimplicialComplex, D: SimplicialComplex, v: int) -> bool:
    """Necessary condition for ``D = del(v, C)`` to be a ball when C is one.

    Only vertex links next to ``v`` change, so for 3-dimensional complexes
    those are the only ones checked.
    """
    if D.dim <= 2:
        return _low_dim_kind(D) == "ball"
    if D.dim != 3:
        return True
    for w in C.link((v,)).vertices:
        if _low_dim_kind(D.link((w,))) not in ("ball", "sphere"):
            return False
    return True


class _VDSearch:
    """Backtracking over shedding vertices.

    The ``shape`` of a complex ("ball", "sphere" or None) is known from its
    ancestors and only ever used to prune:

    * a shedding vertex of a ball lies on its boundary;
    * a pure full-dimensional VD subcomplex of a ball is shellable, hence a
      ball again, and so is a VD vertex deletion of a sphere;
    * links of boundary vertices of balls are balls, links in spheres are
      spheres.

    If a complex carries a wrong shape it is not VD in the first place, so the
    pruning never rejects a VD complex.  Memo entries are keyed by shape too.
    """

    def __init__(self, budget: int):
        self.budget = _Budget(budget)
        self.memo: dict[tuple[SimplicialComplex, str | None], Tree | None] = {}
        self.hom: dict[SimplicialComplex, bool] = {}

    def ok_homology(self, C):
        r = self.hom.get(C)
        if r is None:
            r = self.hom[C] = _homology_top_only(C)
        return r

    def run(self, C: SimplicialComplex, shape: str | None = None) -> Tree | None:
        if C.is_simplex or _is_points(C):
            return Leaf(C.facets)
        key = (C, shape)
        if key in self.memo:
            return self.memo[key]
        self.budget.spend()
        result = None
        if self.ok_homology(C):
            d = C.dim
            cands = list(C.vertices)
            if shape == "ball":
                bd = _boundary_vertices(C)
                cands = [v for v in cands if v in bd]
            cands.sort(key=lambda v: (sum(1 for F in C.facets if v in F), v))
            for v in cands:
                D = C.delete(v)
                if D.dim != d or not D.is_pure:
                    continue
                if shape and not _still_ball(C, D, v):
                    continue
                L = C.link((v,))
                if not self.ok_homology(L) or not self.ok_homology(D):
                    continue
                tl = self.run(L, shape)
                if tl is None:
                    continue
                td = self.run(D, "ball" if shape else None)
                if td is not None:
                    result = Node(v, tl, td)
                    break
        self.memo[key] = result
        return result


def _shape(C: SimplicialComplex) -> str | None:
    if C.dim == 3:
        kind = manifold_check(C).kind
        return kind[2:] if kind != "other" else None
    if C.dim >= 1:
        kind = _low_dim_kind(C)
        return kind if kind != "other" else None
    return None


def is_vertex_decomposable(C: SimplicialComplex, budget: int = 200_000) -> Decision:
    """Backtracking over shedding vertices; on a ball only boundary vertices are tried."""
    if not C.is_pure:
        raise ComplexError("vertex decomposability is only defined here for pure complexes")
    if C.is_void or C.is_irrelevant:
        return Decision(Verdict.TRUE, Leaf(C.facets))
    s = _VDSearch(budget)
    try:
        t = s.run(C, _shape(C))
    except _Exhausted:
        return Decision(Verdict.INCONCLUSIVE, None, s.budget.used)
    if t is None:
        return Decision(Verdict.FALSE, None, s.budget.used)
    return Decision(Verdict.TRUE, t, s.budget.used)


# -- shellability -----------------------------------------------------------------

def _mask(face: Iterable[int], index: dict[int, int]) -> int:
    m = 0
    for v in face:
        m |= 1 << index[v]
    return m


def shelling_step_ok(new: Face, previous: Iterable[Face]) -> bool:
    """Does ``new`` meet the union of ``previous`` in a nonempty pure codimension-1 complex?"""
    fs = set(new)
    inters = [fs.intersection(G) for G in previous]
    ridges = [I for I in inters if len(I) == len(new) - 1]
    if not ridges:
        return False
    return all(any(I <= R for R in ridges) for I in inters if I)


def is_shelling_order(C: SimplicialComplex, order: list[Face]) -> bool:
    if sorted(order) != list(C.facets):
        return False
    return all(shelling_step_ok(order[i], order[:i]) for i in range(1, len(order)))


def is_shellable(C: SimplicialComplex, budget: int = 2_000_000) -> Decision:
    """Depth-first search over facet orders; dead sets of used facets are memoised.

    Whether a partial shelling can be completed depends only on which facets
    have been used, so the search visits each subset at most once.
    """
    if not C.is_pure:
        raise ComplexError("shellability is only defined here for pure complexes")
    facets = list(C.facets)
    n = len(facets)
    if n <= 1 or C.dim <= 0:
        return Decision(Verdict.TRUE, facets)
    index = {v: i for i, v in enumerate(C.vertices)}
    masks = [_mask(F, index) for F in facets]
    d1 = len(facets[0]) - 1
    meet = [[(masks[i] & masks[j]) for j in range(n)] for i in range(n)]
    ridge_size = [[bin(meet[i][j]).count("1") == d1 for j in range(n)] for i in range(n)]
    dead: set[int] = set()
    budget_ = _Budget(budget)
    full = (1 << n) - 1

    def fits(i: int, used: int) -> bool:
        ridges = []
        others = []
        u = used
        while u:
            j = (u & -u).bit_length() - 1
            u &= u - 1
            m = meet[i][j]
            if ridge_size[i][j]:
                ridges.append(m)
            elif m:
                others.append(m)
        if not ridges:
            return False
        return all(any(m & r == m for r in ridges) for m in others)

    order: list[int] = []

    def dfs(used: int) -> bool:
        if used == full:
            return True
        if used in dead:
            return False
        budget_.spend()
        for i in range(n):
            if not used >> i & 1 and fits(i, used):
                order.append(i)
                if dfs(used | 1 << i):
                    return True
                order.pop()
        dead.add(used)
        return False

    try:
        for start in range(n):
            order[:] = [start]
            if dfs(1 << start):
                return Decision(Verdict.TRUE, [facets[i] for i in order], budget_.used)
    except _Exhausted:
        return Decision(Verdict.INCONCLUSIVE, None, budget_.used)
    return Decision(Verdict.FALSE, None, budget_.used)


# -- constructibility ------------------------------------------------------------------

@dataclass(frozen=True)
class CLeaf:
    pass


@dataclass(frozen=True)
class CSplit:
    part1: tuple[Face, ...]
    part2: tuple[Face, ...]
    tree1: "ConstructibilityTree"
    tree2: "ConstructibilityTree"
    meet_tree: "ConstructibilityTree"


ConstructibilityTree = Union[CLeaf, CSplit]


def intersection(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex(A.faces() & B.faces())


def verify_constructibility(C: SimplicialComplex, tree: ConstructibilityTree, path: str = "") -> TreeCheck:
    if isinstance(tree, CLeaf):
        if C.is_simplex or _is_points(C):
            return TreeCheck(True)
        return TreeCheck(False, path or "/", "leaf is neither a simplex nor a set of points")
    d = C.dim
    A, B = SimplicialComplex(tree.part1), SimplicialComplex(tree.part2)
    if A.union(B) != C:
        return TreeCheck(False, path or "/", "the two parts do not cover the complex")
    for name, P in (("first", A), ("second", B)):
        if not P.is_pure or P.dim != d:
            return TreeCheck(False, path or "/", f"{name} part is not pure of dimension {d}")
    M = intersection(A, B)
    if not M.is_pure or M.dim != d - 1:
        return TreeCheck(False, path or "/", f"intersection is not pure of dimension {d - 1}")
    for label, P, t in (("1", A, tree.tree1), ("2", B, tree.tree2), ("meet", M, tree.meet_tree)):
        r = verify_constructibility(P, t, f"{path}/{label}")
        if not r:
            return r
    return TreeCheck(True)


def tree_from_shelling(C: SimplicialComplex, order: list[Face] | None = None) -> ConstructibilityTree:
    """Shellable complexes are constructible: split off the last facet of a shelling."""
    if C.is_simplex or _is_points(C):
        return CLeaf()
    if order is None:
        dec = is_shellable(C)
        if not dec:
            raise ComplexError(f"cannot build a tree: shellability is {dec.verdict.value}")
        order = dec.witness
    head, last = list(order[:-1]), order[-1]
    A = SimplicialComplex(head)
    M = intersection(A, SimplicialComplex([last]))
    return CSplit(tuple(sorted(head)), (last,), tree_from_shelling(A, head),
                  CLeaf(), tree_from_shelling(M))


def constructibility_split(C: SimplicialComplex, part1: Iterable[Iterable[int]]) -> ConstructibilityTree:
    """Split C into ``part1`` and the remaining facets; both halves and the meet via shellings."""
    p1 = SimplicialComplex(part1)
    rest = tuple(F for F in C.facets if F not in set(p1.facets))
    p2 = SimplicialComplex(rest)
    return CSplit(p1.facets, p2.facets, tree_from_shelling(p1), tree_from_shelling(p2),
                  tree_from_shelling(intersection(p1, p2)))
