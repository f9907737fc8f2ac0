"""Finite simplicial complexes over integer vertex labels.

A complex is stored by its facets (inclusion-maximal faces) in canonical form:
every face is a strictly increasing tuple of labels and the facet tuple is
sorted lexicographically.  Two special complexes are kept apart:

* the *void* complex, with no faces at all (``facets == ()``);
* the *irrelevant* complex ``{∅}`` whose only face is the empty simplex
  (``facets == ((),)``), which is what the link of a facet looks like.

Complexes are immutable.  Derived data (faces per dimension, vertex masks) is
computed lazily and cached under a lock, so instances can be shared freely.
"""
from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

Face = tuple[int, ...]


class ComplexError(ValueError):
    """Raised for malformed input or operations outside their domain."""


def _canon_face(face: Iterable[int]) -> Face:
    f = tuple(sorted(int(v) for v in face))
    for a, b in zip(f, f[1:]):
        if a == b:
            raise ComplexError(f"facet {list(face)} repeats vertex {a}")
    if f and f[0] < 0:
        raise ComplexError(f"facet {list(face)} has a negative label")
    return f


def _maximal(faces: Iterable[Face]) -> tuple[Face, ...]:
    """Inclusion-maximal members of ``faces``, in canonical order."""
    uniq = set(faces)
    if not uniq:
        return ()
    sizes = {len(f) for f in uniq}
    if len(sizes) == 1:
        return tuple(sorted(uniq))
    kept: list[tuple[Face, frozenset]] = []
    for f in sorted(uniq, key=len, reverse=True):
        fs = frozenset(f)
        if any(len(g) > len(f) and fs <= gs for g, gs in kept):
            continue
        kept.append((f, fs))
    return tuple(sorted(f for f, _ in kept))


class SimplicialComplex:
    """An immutable finite simplicial complex given by its facets."""

    __slots__ = ("facets", "_faces", "_lock", "_hash", "_vertices")

    def __init__(self, facets: Iterable[Iterable[int]] = (), *, canonical: bool = False):
        if canonical:
            self.facets: tuple[Face, ...] = tuple(facets)  # type: ignore[arg-type]
        else:
            self.facets = _maximal(_canon_face(f) for f in facets)
        self._faces: dict[int, frozenset[Face]] | None = None
        self._lock = threading.Lock()
        self._hash: int | None = None
        self._vertices: tuple[int, ...] | None = None

    # -- basic structure -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        if self._vertices is None:
            self._vertices = tuple(sorted({v for f in self.facets for v in f}))
        return self._vertices

    @property
    def dim(self) -> int:
        """Dimension; -1 for both the void and the irrelevant complex."""
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_irrelevant(self) -> bool:
        return self.facets == ((),)

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    @property
    def is_simplex(self) -> bool:
        return len(self.facets) == 1 and len(self.facets[0]) > 0

    def __len__(self) -> int:
        return len(self.facets)

    def __iter__(self) -> Iterator[Face]:
        return iter(self.facets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.facets)
        return self._hash

    def __repr__(self) -> str:
        if self.is_void:
            return "SimplicialComplex(void)"
        return f"SimplicialComplex(n={len(self.vertices)}, facets={len(self.facets)}, dim={self.dim})"

    def _all_faces(self) -> dict[int, frozenset[Face]]:
        if self._faces is None:
            with self._lock:
                if self._faces is None:
                    by_dim: dict[int, set[Face]] = {}
                    for facet in self.facets:
                        for k in range(1, len(facet) + 1):
                            by_dim.setdefault(k - 1, set()).update(combinations(facet, k))
                    self._faces = {k: frozenset(v) for k, v in by_dim.items()}
        return self._faces

    def faces(self, k: int | None = None) -> frozenset[Face]:
        """Nonempty faces of dimension ``k`` (all nonempty faces if ``k`` is None)."""
        table = self._all_faces()
        if k is None:
            return frozenset().union(*table.values()) if table else frozenset()
        return table.get(k, frozenset())

    def has_face(self, face: Iterable[int]) -> bool:
        f = tuple(sorted(face))
        if not f:
            return not self.is_void
        return f in self.faces(len(f) - 1)

    # -- constructions ---------------------------------------------------

    def link(self, face: Iterable[int]) -> "SimplicialComplex":
        s = tuple(sorted(face))
        if not self.has_face(s):
            raise ComplexError(f"{list(s)} is not a face of the complex")
        ss = set(s)
        out = [tuple(v for v in F if v not in ss) for F in self.facets if ss.issubset(F)]
        return SimplicialComplex(_maximal(out), canonical=True)

    def delete(self, v: int) -> "SimplicialComplex":
        """All faces not containing ``v``."""
        if v not in self.vertices:
            raise ComplexError(f"vertex {v} is not in the complex")
        return self._delete_set({v})

    def delete_all(self, vs: Iterable[int]) -> "SimplicialComplex":
        vs = set(vs)
        missing = vs.difference(self.vertices)
        if missing:
            raise ComplexError(f"vertices {sorted(missing)} are not in the complex")
        return self._delete_set(vs)

    def _delete_set(self, vs: set[int]) -> "SimplicialComplex":
        out = [tuple(u for u in F if u not in vs) for F in self.facets]
        return SimplicialComplex(_maximal(out), canonical=True)

    def induced(self, vs: Iterable[int]) -> "SimplicialComplex":
        """Full subcomplex on the vertex set ``vs``."""
        keep = set(vs)
        return self._delete_set(set(self.vertices) - keep)

    def closed_star(self, v: int) -> "SimplicialComplex":
        if v not in self.vertices:
            raise ComplexError(f"vertex {v} is not in the complex")
        return SimplicialComplex(tuple(F for F in self.facets if v in F), canonical=True)

    def remove_face(self, face: Iterable[int]) -> "SimplicialComplex":
        """Remove ``face`` together with every face containing it."""
        s = tuple(sorted(face))
        if not s or not self.has_face(s):
            raise ComplexError(f"{list(s)} is not a face of the complex")
        ss = set(s)
        out: list[Face] = []
        for F in self.facets:
            if ss.issubset(F):
                out.extend(tuple(u for u in F if u != x) for x in s)
            else:
                out.append(F)
        return SimplicialComplex(_maximal(out), canonical=True)

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(_maximal(self.facets + other.facets), canonical=True)

    def skeleton(self, k: int) -> "SimplicialComplex":
        out = set()
        for F in self.facets:
            if len(F) <= k + 1:
                out.add(F)
            else:
                out.update(combinations(F, k + 1))
        return SimplicialComplex(_maximal(out), canonical=True)

    def f_vector(self) -> tuple[int, ...]:
        return f_vector(self)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.f_vector()))


def from_facets(facet_list: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Build a complex from a list of faces; dominated faces are absorbed."""
    facet_list = list(facet_list)
    for f in facet_list:
        if not list(f):
            raise ComplexError("empty facet in input")
    return SimplicialComplex(facet_list)


def simplex(vertices: Iterable[int]) -> SimplicialComplex:
    return SimplicialComplex([tuple(vertices)])


def simplex_boundary(vertices: Iterable[int]) -> SimplicialComplex:
    vs = tuple(sorted(vertices))
    return SimplicialComplex(combinations(vs, len(vs) - 1))


def f_vector(C: SimplicialComplex) -> tuple[int, ...]:
    if C.dim < 0:
        return ()
    return tuple(len(C.faces(k)) for k in range(C.dim + 1))


def boundary_complex(C: SimplicialComplex) -> SimplicialComplex:
    """Complex generated by the codimension-one faces lying in exactly one facet."""
    if not C.is_pure:
        raise ComplexError("boundary is only defined here for pure complexes")
    if C.dim < 1:
        raise ComplexError("boundary needs dimension at least 1")
    counts = Counter(r for F in C.facets for r in combinations(F, len(F) - 1))
    return SimplicialComplex(sorted(r for r, n in counts.items() if n == 1), canonical=True)


def link(C: SimplicialComplex, s: Iterable[int]) -> SimplicialComplex:
    return C.link(s)


def delete(C: SimplicialComplex, v: int) -> SimplicialComplex:
    return C.delete(v)


def closed_star(C: SimplicialComplex, v: int) -> SimplicialComplex:
    return C.closed_star(v)


def cone(apex: int, C: SimplicialComplex) -> SimplicialComplex:
    if apex in C.vertices:
        raise ComplexError(f"apex {apex} is already a vertex")
    if C.is_void:
        return C
    return SimplicialComplex(tuple(sorted(_canon_face(F + (apex,)) for F in C.facets)), canonical=True)


def face_order(C: SimplicialComplex) -> list[Face]:
    """Nonempty faces sorted by dimension, then lexicographically."""
    return [f for k in range(C.dim + 1) for f in sorted(C.faces(k))]


def barycentric_subdivision(C: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the face poset; face number ``i`` of :func:`face_order` becomes vertex ``i``."""
    label = {f: i for i, f in enumerate(face_order(C))}
    chains = set()
    for F in C.facets:
        for perm in permutations(F):
            chains.add(tuple(sorted(label[tuple(sorted(perm[: j + 1]))] for j in range(len(perm)))))
    return SimplicialComplex(sorted(chains), canonical=True)


# -- manifold recognition ------------------------------------------------

@dataclass
class ManifoldReport:
    kind: str  # "3-sphere", "3-ball" or "other"
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.kind != "other"


def is_connected(C: SimplicialComplex) -> bool:
    vs = C.vertices
    if not vs:
        return False
    adj: dict[int, set[int]] = {v: set() for v in vs}
    for F in C.facets:
        for v in F:
            adj[v].update(F)
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vs)


def _low_dim_kind(C: SimplicialComplex) -> str:
    """Classify a complex of dimension <= 2 as 'sphere', 'ball' or 'other'."""
    d = C.dim
    if C.is_void or C.is_irrelevant or not C.is_pure:
        return "other"
    if d == 0:
        return {1: "ball", 2: "sphere"}.get(len(C.facets), "other")
    if not is_connected(C):
        return "other"
    if d == 1:
        deg = Counter(v for e in C.facets for v in e)
        if any(n > 2 for n in deg.values()):
            return "other"
        return "ball" if any(n == 1 for n in deg.values()) else "sphere"
    if d == 2:
        edge_deg = Counter(e for t in C.facets for e in combinations(t, 2))
        if any(n > 2 for n in edge_deg.values()):
            return "other"
        for v in C.vertices:
            if _low_dim_kind(C.link((v,))) == "other":
                return "other"
        chi = C.euler_characteristic()
        bd = [e for e, n in edge_deg.items() if n == 1]
        if not bd:
            return "sphere" if chi == 2 else "other"
        if chi == 1 and _low_dim_kind(SimplicialComplex(bd)) == "sphere":
            return "ball"
        return "other"
    return "other"


def manifold_check(C: SimplicialComplex) -> ManifoldReport:
    """Recognise homology 3-spheres/3-balls whose vertex links are 2-spheres/2-balls."""
    from .homology import reduced_homology

    problems: list[str] = []
    if C.dim != 3 or not C.is_pure:
        return ManifoldReport("other", ["not a pure 3-dimensional complex"])
    if not is_connected(C):
        return ManifoldReport("other", ["disconnected"])
    tri_deg = Counter(t for F in C.facets for t in combinations(F, 3))
    bad = sorted(t for t, n in tri_deg.items() if n > 2)
    if bad:
        return ManifoldReport("other", [f"triangle {list(t)} lies in more than two facets" for t in bad])
    bd = boundary_complex(C)
    bd_vertices = set(bd.vertices)
    for v in C.vertices:
        kind = _low_dim_kind(C.link((v,)))
        want = "ball" if v in bd_vertices else "sphere"
        if kind != want:
            problems.append(f"link of vertex {v} is {kind}, expected a 2-{want}")
    if problems:
        return ManifoldReport("other", problems)
    h = reduced_homology(C)
    if bd.is_void:
        if h.betti == (0, 0, 0, 1) and not any(h.torsion):
            return ManifoldReport("3-sphere")
        return ManifoldReport("other", [f"closed, but reduced homology is {h}"])
    if _low_dim_kind(bd) != "sphere":
        problems.append("boundary is not a 2-sphere")
    if not h.is_zero():
        problems.append(f"reduced homology is {h}, expected acyclic")
    return ManifoldReport("other" if problems else "3-ball", problems)


# -- .cplx text format -----------------------------------------------------

def parse_cplx(text: str) -> SimplicialComplex:
    facets = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            facets.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ComplexError(f"line {n}: expected integers, got {line!r}") from None
    return from_facets(facets)


def emit_cplx(C: SimplicialComplex, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines += [" ".join(map(str, F)) for F in C.facets]
    return "\n".join(lines) + "\n"


def read_cplx(path: str | Path) -> SimplicialComplex:
    return parse_cplx(Path(path).read_text())


def write_cplx(C: SimplicialComplex, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(emit_cplx(C, comment))


def parse_face_list(text: str) -> list[Face]:
    """Parse ``"1 2, 2 3, 1 3"`` into a list of canonical faces."""
    return [_canon_face(part.split()) for part in text.split(",") if part.strip()]


def format_face(face: Sequence[int]) -> str:
    return " ".join(map(str, face))
