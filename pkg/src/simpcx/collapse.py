"""Elementary collapses, collapse certificates, random discrete Morse functions and LC checks.

A certificate is a flat list of steps.  A :class:`CollapsePair` removes a free
face together with its unique coface; a :class:`Critical` step removes a
maximal face outright (this is how a discrete Morse function is recorded as a
sequence: matched pairs are the collapses, the critical faces are the
explicit removals).  A pure collapse certificate has no critical steps.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

from .complex import (
    ComplexError,
    Face,
    SimplicialComplex,
    boundary_complex,
    format_face,
    manifold_check,
    parse_face_list,
)
from .homology import reduced_homology

logger = logging.getLogger(__name__)

POINT = "point"


@dataclass(frozen=True)
class CollapsePair:
    free: Face
    coface: Face

    def __post_init__(self):
        if not (len(self.coface) == len(self.free) + 1 and set(self.free) < set(self.coface)):
            raise ComplexError(f"{list(self.free)} is not a facet of {list(self.coface)}")


@dataclass(frozen=True)
class Critical:
    face: Face


Step = Union[CollapsePair, Critical]
Target = Union[str, SimplicialComplex]


@dataclass
class CollapseCertificate:
    steps: list[Step]
    target: Target = POINT
    phases: list[int] = field(default_factory=list)  # cosmetic phase boundaries

    @property
    def pairs(self) -> list[CollapsePair]:
        return [s for s in self.steps if isinstance(s, CollapsePair)]

    @property
    def critical(self) -> list[Face]:
        return [s.face for s in self.steps if isinstance(s, Critical)]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass
class Verification:
    ok: bool
    index: int | None = None  # first failing step, or None
    reason: str = ""
    residue: SimplicialComplex | None = None
    critical: list[Face] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "verified"
        if self.index is None:
            return f"fails at the end: {self.reason}"
        return f"fails at step {self.index + 1}: {self.reason}"


def _facets_of(face: Face):
    n = len(face)
    if n == 1:
        return ()
    return [face[:i] + face[i + 1:] for i in range(n)]


class _IndexedSet:
    """Set with O(1) add/discard and uniform random choice."""

    __slots__ = ("items", "pos")

    def __init__(self):
        self.items: list = []
        self.pos: dict = {}

    def add(self, x):
        if x not in self.pos:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def discard(self, x):
        i = self.pos.pop(x, None)
        if i is None:
            return
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def __len__(self):
        return len(self.items)

    def choice(self, rng: random.Random):
        return self.items[rng.randrange(len(self.items))]


class _Collapser:
    """Mutable face poset supporting elementary collapses and critical removals."""

    def __init__(self, C: SimplicialComplex, protected: Iterable[Face] = ()):
        self.up: dict[Face, set[Face]] = {f: set() for f in C.faces()}
        for f in self.up:
            for r in _facets_of(f):
                self.up[r].add(f)
        self.protected = set(protected)
        self.top = max((len(f) for f in self.up), default=0)
        # free faces, bucketed by the size of their coface
        self.free: dict[int, _IndexedSet] = {k: _IndexedSet() for k in range(2, self.top + 1)}
        self.by_size: dict[int, int] = {}
        for f in self.up:
            self.by_size[len(f)] = self.by_size.get(len(f), 0) + 1
        for f in self.up:
            self._refresh(f)

    def coface_of(self, f: Face) -> Face | None:
        up = self.up.get(f)
        if up is None or len(up) != 1:
            return None
        (g,) = up
        return g if not self.up[g] else None

    def _refresh(self, f: Face):
        if len(f) >= self.top + 1 or f not in self.up:
            return
        bucket = self.free.get(len(f) + 1)
        if bucket is None:
            return
        g = self.coface_of(f)
        if g is not None and f not in self.protected and g not in self.protected:
            bucket.add(f)
        else:
            bucket.discard(f)

    def _remove(self, f: Face, touched: set):
        for r in _facets_of(f):
            self.up[r].discard(f)
            touched.add(r)
        del self.up[f]
        self.by_size[len(f)] -= 1
        b = self.free.get(len(f) + 1)
        if b is not None:
            b.discard(f)

    def _after(self, touched: set):
        for r in touched:
            if r not in self.up:
                continue
            self._refresh(r)
            if not self.up[r]:
                for rr in _facets_of(r):
                    self._refresh(rr)

    def check_pair(self, p: CollapsePair) -> str:
        if p.coface not in self.up:
            return f"face {list(p.coface)} is absent"
        if p.free not in self.up:
            return f"face {list(p.free)} is absent"
        if self.coface_of(p.free) != p.coface:
            return f"{list(p.free)} is not a free face of {list(p.coface)}"
        if p.free in self.protected or p.coface in self.protected:
            return "pair touches the target subcomplex"
        return ""

    def collapse(self, p: CollapsePair):
        touched: set = set()
        self._remove(p.coface, touched)
        self._remove(p.free, touched)
        touched.discard(p.free)
        self._after(touched)

    def check_critical(self, f: Face) -> str:
        if f not in self.up:
            return f"face {list(f)} is absent"
        if self.up[f]:
            return f"face {list(f)} is not maximal"
        return ""

    def remove_critical(self, f: Face):
        touched: set = set()
        self._remove(f, touched)
        self._after(touched)

    def current_top(self, *, outside_target: bool = False) -> int:
        for k in range(self.top, 0, -1):
            if self.by_size.get(k):
                if not outside_target:
                    return k
                if any(len(f) == k and f not in self.protected for f in self.up):
                    return k
        return 0

    def residue(self) -> SimplicialComplex:
        return SimplicialComplex(self.up.keys())

    @property
    def size(self) -> int:
        return len(self.up)


def free_pairs(C: SimplicialComplex) -> list[CollapsePair]:
    st = _Collapser(C)
    out = [CollapsePair(f, st.coface_of(f)) for b in st.free.values() for f in b.items]
    return sorted(out, key=lambda p: (len(p.coface), p.coface, p.free))


def _target_faces(C: SimplicialComplex, target: Target) -> set[Face]:
    if target == POINT:
        return set()
    assert isinstance(target, SimplicialComplex)
    faces = set(target.faces())
    if not faces <= set(C.faces()):
        raise ComplexError("target is not a subcomplex")
    return faces


def _residue_matches(st: _Collapser, target: Target) -> bool:
    if target == POINT:
        return st.size == 1
    return set(st.up) == set(target.faces())


def verify_certificate(C: SimplicialComplex, cert: CollapseCertificate) -> Verification:
    """Replay ``cert`` on ``C``; critical steps are allowed (Morse certificates)."""
    try:
        protected = _target_faces(C, cert.target)
    except ComplexError as e:
        return Verification(False, None, str(e))
    st = _Collapser(C, protected)
    for i, step in enumerate(cert.steps):
        if isinstance(step, CollapsePair):
            why = st.check_pair(step)
            if why:
                return Verification(False, i, why, st.residue())
            st.collapse(step)
        else:
            why = st.check_critical(step.face)
            if why:
                return Verification(False, i, why, st.residue())
            st.remove_critical(step.face)
    residue = st.residue()
    crit = cert.critical
    if cert.target == POINT:
        if st.size != 1:
            return Verification(False, None, f"residue has {st.size} faces, not a single vertex", residue, crit)
    elif residue != cert.target:
        return Verification(False, None, "residue differs from the declared target", residue, crit)
    return Verification(True, None, "", residue, crit)


# -- randomized search --------------------------------------------------------

STRATEGIES = ("uniform", "fewest-new-free")


def _pick(st: _Collapser, bucket: _IndexedSet, rng: random.Random, strategy: str) -> Face:
    if strategy == "uniform" or len(bucket) == 1:
        return bucket.choice(rng)
    # fewest-new-free: prefer removals exposing the fewest new free faces
    best, score = [], None
    for f in bucket.items:
        g = st.coface_of(f)
        s = sum(1 for r in _facets_of(g) if r != f and len(st.up[r]) == 2)
        if score is None or s < score:
            best, score = [f], s
        elif s == score:
            best.append(f)
    best.sort()
    return best[rng.randrange(len(best))]


def _one_run(C: SimplicialComplex, protected: set, target: Target, rng: random.Random,
             strategy: str) -> list[Step] | None:
    st = _Collapser(C, protected)
    steps: list[Step] = []
    nontarget = {k: 0 for k in range(1, st.top + 1)}
    for f in st.up:
        if f not in protected:
            nontarget[len(f)] += 1
    while True:
        k = max((s for s, n in nontarget.items() if n), default=0)
        if k <= 1:
            break
        bucket = st.free[k]
        if not len(bucket):
            return None
        f = _pick(st, bucket, rng, strategy)
        g = st.coface_of(f)
        st.collapse(CollapsePair(f, g))
        nontarget[k] -= 1
        nontarget[k - 1] -= 1
        steps.append(CollapsePair(f, g))
    if target == POINT:
        return steps if st.size == 1 else None
    return steps if _residue_matches(st, target) else None


@dataclass
class SearchResult:
    certificate: CollapseCertificate | None
    attempts: int
    seed: int
    strategy: str

    @property
    def success(self) -> bool:
        return self.certificate is not None

    def describe(self) -> str:
        if self.success:
            return f"verified: collapsible ({len(self.certificate)} pairs, attempt {self.attempts}, seed {self.seed})"
        return f"inconclusive after {self.attempts} restarts (seed {self.seed}, strategy {self.strategy})"


def search_collapse(C: SimplicialComplex, target: Target = POINT, seed: int = 0, budget: int = 100,
                    strategy: str = "uniform") -> SearchResult:
    """Random collapsing, top dimension first, with up to ``budget`` restarts.

    Faces of ``target`` are never removed.  Failure is not a proof of
    non-collapsibility.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    protected = _target_faces(C, target)
    rng = random.Random(seed)
    for attempt in range(1, budget + 1):
        steps = _one_run(C, protected, target, rng, strategy)
        if steps is not None:
            return SearchResult(CollapseCertificate(steps, target), attempt, seed, strategy)
        logger.debug("collapse attempt %d got stuck", attempt)
    return SearchResult(None, budget, seed, strategy)


# -- discrete Morse functions -------------------------------------------------

@dataclass
class MorseMatching:
    pairs: list[CollapsePair]
    critical: list[Face]

    def vector(self, dim: int) -> tuple[int, ...]:
        c = [0] * (dim + 1)
        for f in self.critical:
            c[len(f) - 1] += 1
        return tuple(c)

    def certificate(self, order: list[Step]) -> CollapseCertificate:
        return CollapseCertificate(list(order), POINT)


def matching_is_acyclic(C: SimplicialComplex, pairs: Iterable[CollapsePair]) -> bool:
    """No directed cycle in the Hasse diagram with matched edges reversed."""
    up_edge = {}
    for p in pairs:
        if p.free in up_edge or p.coface in up_edge.values():
            return False
        up_edge[p.free] = p.coface
    matched_coface = {g: f for f, g in up_edge.items()}
    faces = C.faces()
    # edges: tau -> rho (down) unless matched, rho -> tau when matched
    succ: dict[Face, list[Face]] = {f: [] for f in faces}
    for tau in faces:
        for rho in _facets_of(tau):
            if matched_coface.get(tau) == rho:
                succ[rho].append(tau)
            else:
                succ[tau].append(rho)
    state: dict[Face, int] = {}
    for root in faces:
        if root in state:
            continue
        stack = [(root, iter(succ[root]))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return False
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return True


def morse_from_certificate(C: SimplicialComplex, cert: CollapseCertificate) -> MorseMatching:
    v = verify_certificate(C, cert)
    if not v:
        raise ComplexError(f"certificate fails at step {v.index}: {v.reason}")
    crit = list(cert.critical)
    if cert.target == POINT:
        crit += list(v.residue.faces(0))
    return MorseMatching(cert.pairs, crit)


def random_discrete_morse(C: SimplicialComplex, seed: int = 0, strategy: str = "uniform"
                          ) -> tuple[MorseMatching, tuple[int, ...], list[Step]]:
    """Collapse at random; when stuck, remove a random top-dimensional face as critical.

    Returns the matching, its Morse vector and the step order that realises it
    (a certificate with target "point": the last critical vertex is the residue).
    """
    rng = random.Random(seed)
    st = _Collapser(C)
    steps: list[Step] = []
    pairs: list[CollapsePair] = []
    critical: list[Face] = []
    while st.size:
        k = st.current_top()
        if k >= 2 and len(st.free[k]):
            f = _pick(st, st.free[k], rng, strategy)
            p = CollapsePair(f, st.coface_of(f))
            st.collapse(p)
            pairs.append(p)
            steps.append(p)
        elif st.size == 1:
            # the last vertex is the residue of the certificate, not a step
            critical.append(next(iter(st.up)))
            break
        else:
            tops = sorted(f for f in st.up if len(f) == k)
            f = tops[rng.randrange(len(tops))]
            st.remove_critical(f)
            critical.append(f)
            steps.append(Critical(f))
    m = MorseMatching(pairs, critical)
    return m, m.vector(C.dim), steps


def morse_inequalities_hold(C: SimplicialComplex, vector: tuple[int, ...]) -> bool:
    """c_i >= beta_i with unreduced Betti numbers."""
    h = reduced_homology(C)
    betti = list(h.betti)
    if betti:
        betti[0] += 1
    return all(c >= b for c, b in zip(vector, betti))


def find_morse_vector(C: SimplicialComplex, wanted: tuple[int, ...], tries: int = 10_000,
                      seed: int = 0, strategy: str = "uniform"):
    """Run seeds ``seed, seed+1, ...`` until the Morse vector ``wanted`` shows up."""
    seen: dict[tuple[int, ...], int] = {}
    for s in range(seed, seed + tries):
        m, vec, steps = random_discrete_morse(C, s, strategy)
        seen[vec] = seen.get(vec, 0) + 1
        if vec == wanted:
            return s, m, steps, seen
    return None, None, None, seen


# -- LC checks ------------------------------------------------------------------

@dataclass
class LCEvidence:
    success: bool
    witness: Face | None = None  # boundary triangle (balls) or removed facet (spheres)
    certificate: CollapseCertificate | None = None
    tried: int = 0
    note: str = ""

    def __bool__(self) -> bool:
        return self.success


def check_lc_ball(B: SimplicialComplex, seed: int = 0, budget: int = 100,
                  strategy: str = "uniform", require_ball: bool = True) -> LCEvidence:
    """Look for a collapse of ``B`` onto its boundary minus one triangle."""
    if require_ball and manifold_check(B).kind != "3-ball":
        raise ComplexError("check_lc_ball needs a 3-ball")
    bd = boundary_complex(B)
    tris = list(bd.facets)
    rng = random.Random(seed)
    rng.shuffle(tris)
    for n, t in enumerate(tris, 1):
        target = SimplicialComplex([f for f in bd.facets if f != t])
        res = search_collapse(B, target, rng.randrange(2**32), budget, strategy)
        if res.success:
            return LCEvidence(True, t, res.certificate, n)
    return LCEvidence(False, None, None, len(tris),
                      f"inconclusive: no collapse found for any of {len(tris)} boundary triangles")


def check_lc_sphere(S: SimplicialComplex, seed: int = 0, budget: int = 100,
                    strategy: str = "uniform", require_sphere: bool = True,
                    facets: list[Face] | None = None) -> LCEvidence:
    """Look for a facet whose removal leaves a collapsible complex."""
    if require_sphere and manifold_check(S).kind != "3-sphere":
        raise ComplexError("check_lc_sphere needs a 3-sphere")
    order = list(facets) if facets is not None else list(S.facets)
    rng = random.Random(seed)
    if facets is None:
        rng.shuffle(order)
    for n, F in enumerate(order, 1):
        res = search_collapse(S.remove_face(F), POINT, rng.randrange(2**32), budget, strategy)
        if res.success:
            return LCEvidence(True, F, res.certificate, n)
    return LCEvidence(False, None, None, len(order),
                      f"inconclusive: no collapse found after removing any of {len(order)} facets")


# -- .clps text format ------------------------------------------------------------

def parse_clps(text: str) -> CollapseCertificate:
    target: Target | None = None
    steps: list[Step] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("target"):
            rest = line[len("target"):].strip()
            target = POINT if rest == POINT else SimplicialComplex(parse_face_list(rest))
            continue
        try:
            if line.startswith("critical"):
                steps.append(Critical(tuple(sorted(int(x) for x in line.split()[1:]))))
            else:
                a, b = line.split("->")
                steps.append(CollapsePair(tuple(sorted(int(x) for x in a.split())),
                                          tuple(sorted(int(x) for x in b.split()))))
        except (ValueError, ComplexError) as e:
            raise ComplexError(f"line {n}: cannot parse {line!r}: {e}") from None
    if target is None:
        raise ComplexError("certificate has no 'target' header line")
    return CollapseCertificate(steps, target)


def emit_clps(cert: CollapseCertificate, comment: str | None = None) -> str:
    out = [f"# {comment}"] if comment else []
    if cert.target == POINT:
        out.append("target point")
    else:
        out.append("target " + ", ".join(format_face(f) for f in cert.target.facets))
    for s in cert.steps:
        if isinstance(s, Critical):
            out.append("critical " + format_face(s.face))
        else:
            out.append(f"{format_face(s.free)} -> {format_face(s.coface)}")
    return "\n".join(out) + "\n"


def read_clps(path: str | Path) -> CollapseCertificate:
    return parse_clps(Path(path).read_text())
