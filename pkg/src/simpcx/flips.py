"""Bistellar moves on closed triangulated 3-manifolds and annealed reduction.

Moves are named by the number of tetrahedra they remove and create:

* ``1-4``  subdivide a tetrahedron with a new vertex;
* ``2-3``  replace two tetrahedra sharing a triangle by three around a new edge;
* ``3-2``  the inverse, pivoting on an edge of degree three;
* ``4-1``  remove a vertex of degree four.
"""
from __future__ import annotations

import hashlib
import json
import logging
import random
from dataclasses import asdict, dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from .complex import ComplexError, Face, SimplicialComplex, emit_cplx, format_face

logger = logging.getLogger(__name__)

KINDS = ("1-4", "2-3", "3-2", "4-1")
# change of (f0, f1, f2, f3) per move kind
F_DELTA = {
    "1-4": (1, 4, 6, 3),
    "2-3": (0, 1, 2, 1),
    "3-2": (0, -1, -2, -1),
    "4-1": (-1, -4, -6, -3),
}


@dataclass(frozen=True)
class FlipMove:
    kind: str
    pivot: Face
    new_label: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        want = {"1-4": 4, "2-3": 3, "3-2": 2, "4-1": 1}[self.kind]
        if len(self.pivot) != want:
            raise ValueError(f"a {self.kind} move pivots on a face with {want} vertices")

    def __str__(self) -> str:
        s = f"{self.kind} {format_face(self.pivot)}"
        return s if self.new_label is None else f"{s} {self.new_label}"


def canonical_hash(S: SimplicialComplex) -> str:
    return hashlib.sha256(emit_cplx(S).encode()).hexdigest()


def _norm_edges(edges: Iterable[Iterable[int]] | None) -> frozenset[Face]:
    return frozenset(tuple(sorted(e)) for e in (edges or ()))


class Triangulation:
    """Mutable closed 3-manifold triangulation with incidence maps."""

    def __init__(self, S: SimplicialComplex | Iterable[Face]):
        facets = S.facets if isinstance(S, SimplicialComplex) else tuple(S)
        self.facets: set[Face] = set()
        self.tri: dict[Face, set[Face]] = {}
        self.edge: dict[Face, set[Face]] = {}
        self.vert: dict[int, set[Face]] = {}
        for F in facets:
            if len(F) != 4:
                raise ComplexError("flips need a pure 3-dimensional complex")
            self._add(F)
        bad = [t for t, s in self.tri.items() if len(s) != 2]
        if bad:
            raise ComplexError(f"not a closed 3-manifold: triangle {list(bad[0])} lies in {len(self.tri[bad[0]])} facets")

    def _add(self, F: Face):
        self.facets.add(F)
        for t in combinations(F, 3):
            self.tri.setdefault(t, set()).add(F)
        for e in combinations(F, 2):
            self.edge.setdefault(e, set()).add(F)
        for v in F:
            self.vert.setdefault(v, set()).add(F)

    def _remove(self, F: Face):
        self.facets.remove(F)
        for table, keys in ((self.tri, combinations(F, 3)), (self.edge, combinations(F, 2)), (self.vert, F)):
            for k in keys:
                s = table[k]
                s.discard(F)
                if not s:
                    del table[k]

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(sorted(self.facets), canonical=True)

    def f_vector(self) -> tuple[int, int, int, int]:
        return len(self.vert), len(self.edge), len(self.tri), len(self.facets)

    def vertex_link(self, v: int) -> SimplicialComplex:
        return SimplicialComplex([tuple(x for x in F if x != v) for F in self.vert[v]])

    def fresh_label(self) -> int:
        v = 0
        while v in self.vert:
            v += 1
        return v

    # -- legality --------------------------------------------------------------

    def why_illegal(self, m: FlipMove, protected: frozenset = frozenset()) -> str:
        p = m.pivot
        if m.kind == "1-4":
            if p not in self.facets:
                return f"{list(p)} is not a facet"
            if m.new_label is None or m.new_label in self.vert:
                return f"new label {m.new_label} is missing or already used"
            return ""
        if m.kind == "2-3":
            cof = self.tri.get(p)
            if not cof:
                return f"{list(p)} is not a triangle"
            (d,), (e,) = (tuple(set(F) - set(p)) for F in cof)
            if tuple(sorted((d, e))) in self.edge:
                return f"the edge {min(d, e)} {max(d, e)} is already present"
            return ""
        if m.kind == "3-2":
            if p in protected:
                return f"edge {list(p)} is protected"
            star = self.edge.get(p)
            if not star:
                return f"{list(p)} is not an edge"
            if len(star) != 3:
                return f"edge {list(p)} lies in {len(star)} facets, not 3"
            opp = tuple(sorted(set().union(*star) - set(p)))
            if opp in self.tri:
                return f"the triangle {format_face(opp)} is already present"
            return ""
        (v,) = p
        star = self.vert.get(v)
        if not star:
            return f"{v} is not a vertex"
        if any(v in e for e in protected):
            return f"vertex {v} is the endpoint of a protected edge"
        if len(star) != 4:
            return f"vertex {v} lies in {len(star)} facets, not 4"
        opp = tuple(sorted(set().union(*star) - {v}))
        if len(opp) != 4:
            return f"the link of {v} is not the boundary of a tetrahedron"
        if opp in self.facets:
            return f"the tetrahedron {format_face(opp)} is already present"
        return ""

    def moves(self, protected: frozenset = frozenset(), allow_1_4: bool = False) -> dict[str, list[FlipMove]]:
        out: dict[str, list[FlipMove]] = {k: [] for k in KINDS}
        for v in sorted(self.vert):
            if len(self.vert[v]) == 4:
                m = FlipMove("4-1", (v,))
                if not self.why_illegal(m, protected):
                    out["4-1"].append(m)
        for e in sorted(self.edge):
            if len(self.edge[e]) == 3:
                m = FlipMove("3-2", e)
                if not self.why_illegal(m, protected):
                    out["3-2"].append(m)
        for t in sorted(self.tri):
            (d,), (e,) = (tuple(set(F) - set(t)) for F in self.tri[t])
            if tuple(sorted((d, e))) not in self.edge:
                out["2-3"].append(FlipMove("2-3", t))
        if allow_1_4:
            new = self.fresh_label()
            out["1-4"] = [FlipMove("1-4", F, new) for F in sorted(self.facets)]
        return out

    def apply(self, m: FlipMove, protected: frozenset = frozenset()):
        why = self.why_illegal(m, protected)
        if why:
            raise ComplexError(f"illegal {m.kind} move on {list(m.pivot)}: {why}")
        p = m.pivot
        if m.kind == "1-4":
            self._remove(p)
            for i in range(4):
                self._add(tuple(sorted(p[:i] + p[i + 1:] + (m.new_label,))))
        elif m.kind == "2-3":
            cof = list(self.tri[p])
            d, e = (next(iter(set(F) - set(p))) for F in cof)
            for F in cof:
                self._remove(F)
            for s in combinations(p, 2):
                self._add(tuple(sorted(s + (d, e))))
        elif m.kind == "3-2":
            star = list(self.edge[p])
            opp = tuple(sorted(set().union(*star) - set(p)))
            for F in star:
                self._remove(F)
            for x in p:
                self._add(tuple(sorted(opp + (x,))))
        else:
            (v,) = p
            star = list(self.vert[v])
            opp = tuple(sorted(set().union(*star) - {v}))
            for F in star:
                self._remove(F)
            self._add(opp)


def legal_moves(S: SimplicialComplex, protected: Iterable[Iterable[int]] = (), allow_1_4: bool = True) -> list[FlipMove]:
    T = Triangulation(S)
    by_kind = T.moves(_norm_edges(protected), allow_1_4)
    return [m for k in KINDS for m in by_kind[k]]


def apply_move(S: SimplicialComplex, m: FlipMove, protected: Iterable[Iterable[int]] = ()) -> SimplicialComplex:
    T = Triangulation(S)
    T.apply(m, _norm_edges(protected))
    return T.complex()


def random_flips(S: SimplicialComplex, steps: int, seed: int = 0, protected: Iterable[Iterable[int]] = (),
                 allow_1_4: bool = True) -> Iterator[tuple[FlipMove, Triangulation]]:
    """Random walk: pick a move type that has legal moves, then one of those moves.

    Yields the move and the (shared, mutated) triangulation after it.
    """
    rng = random.Random(seed)
    prot = _norm_edges(protected)
    T = Triangulation(S)
    for _ in range(steps):
        avail = [ms for ms in T.moves(prot, allow_1_4).values() if ms]
        m = rng.choice(rng.choice(avail))
        T.apply(m, prot)
        yield m, T


# -- logs ---------------------------------------------------------------------------

@dataclass
class FlipLog:
    initial: str
    moves: list[FlipMove]
    final: str
    protected: tuple[Face, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)


class ReplayError(ComplexError):
    def __init__(self, index: int | None, reason: str):
        super().__init__(f"step {index}: {reason}" if index is not None else reason)
        self.index = index


def replay(S: SimplicialComplex, log: FlipLog) -> SimplicialComplex:
    if canonical_hash(S) != log.initial:
        raise ReplayError(None, "initial complex does not match the log")
    T = Triangulation(S)
    prot = frozenset(log.protected)
    for i, m in enumerate(log.moves):
        why = T.why_illegal(m, prot)
        if why:
            raise ReplayError(i, f"illegal {m}: {why}")
        T.apply(m, prot)
    out = T.complex()
    if canonical_hash(out) != log.final:
        raise ReplayError(len(log.moves), "final complex does not match the log")
    return out


def emit_flp(log: FlipLog) -> str:
    lines = [f"initial {log.initial}"]
    if log.protected:
        lines.append("protect " + ", ".join(format_face(e) for e in log.protected))
    lines += [str(m) for m in log.moves]
    lines.append(f"final {log.final}")
    return "\n".join(lines) + "\n"


def parse_flp(text: str) -> FlipLog:
    initial = final = None
    protected: tuple[Face, ...] = ()
    moves = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        word, _, rest = line.partition(" ")
        if word == "initial":
            initial = rest.strip()
        elif word == "final":
            final = rest.strip()
        elif word == "protect":
            protected = tuple(sorted(tuple(sorted(int(x) for x in part.split())) for part in rest.split(",")))
        elif word in KINDS:
            nums = [int(x) for x in rest.split()]
            if word == "1-4":
                if len(nums) != 5:
                    raise ComplexError(f"line {n}: a 1-4 move needs 4 vertices and a new label")
                moves.append(FlipMove(word, tuple(sorted(nums[:4])), nums[4]))
            else:
                moves.append(FlipMove(word, tuple(sorted(nums))))
        else:
            raise ComplexError(f"line {n}: cannot parse {line!r}")
    if initial is None or final is None:
        raise ComplexError("log lacks an 'initial' or 'final' line")
    return FlipLog(initial, moves, final, protected)


def read_flp(path: str | Path) -> FlipLog:
    return parse_flp(Path(path).read_text())


# -- annealing ----------------------------------------------------------------------

@dataclass
class AnnealConfig:
    """Parameters of the reduction schedule.

    ``temperature`` is the probability of taking an uphill 2-3 (or 1-4) move
    even though a 3-2 move is available.  It decays geometrically and is reset
    to ``reheat`` after ``plateau`` steps without a new best complex.
    """

    start_temperature: float = 0.0
    cooling: float = 0.95
    reheat: float = 0.35
    plateau: int = 60
    min_temperature: float = 0.0
    insert_probability: float = 0.05  # share of uphill moves that are 1-4 when allowed

    @classmethod
    def from_json(cls, path: str | Path) -> "AnnealConfig":
        data = json.loads(Path(path).read_text())
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


@dataclass
class ReduceResult:
    log: FlipLog
    complex: SimplicialComplex
    steps: int
    best_at: int
    seed: int

    @property
    def f_vector(self):
        return self.complex.f_vector()


def _objective(T: Triangulation) -> tuple[int, int]:
    return len(T.vert), len(T.facets)


def reduce(S: SimplicialComplex, seed: int = 0, budget: int = 10_000, protected: Iterable[Iterable[int]] = (),
           allow_1_4: bool = False, config: AnnealConfig | None = None) -> ReduceResult:
    """Anneal towards few vertices, then few facets.

    Preference order 4-1 > 3-2 > 2-3; with probability ``temperature`` an
    uphill move is taken instead of an available 3-2.  The returned log ends
    at the best complex seen (so it may be shorter than ``budget``).
    """
    cfg = config or AnnealConfig()
    prot = _norm_edges(protected)
    for e in prot:
        if e not in S.faces(1):
            raise ComplexError(f"protected edge {list(e)} is not in the complex")
    rng = random.Random(seed)
    T = Triangulation(S)
    initial = canonical_hash(S)
    moves: list[FlipMove] = []
    best, best_at = _objective(T), 0
    temp = cfg.start_temperature
    since = 0
    step = 0
    while step < budget and len(T.facets) > 5:
        avail = T.moves(prot, allow_1_4)
        if avail["4-1"]:
            m = rng.choice(avail["4-1"])
        else:
            uphill = avail["2-3"]
            if allow_1_4 and avail["1-4"] and (not uphill or rng.random() < cfg.insert_probability):
                uphill = avail["1-4"]
            if avail["3-2"] and (not uphill or rng.random() >= temp):
                m = rng.choice(avail["3-2"])
            elif uphill:
                m = rng.choice(uphill)
            else:
                break
        T.apply(m, prot)
        moves.append(m)
        step += 1
        obj = _objective(T)
        if obj < best:
            best, best_at, since = obj, step, 0
            logger.debug("step %d: f-vector %s", step, T.f_vector())
        else:
            since += 1
        temp = max(cfg.min_temperature, temp * cfg.cooling)
        if since >= cfg.plateau:
            temp, since = cfg.reheat, 0
    # rewind to the best complex seen
    moves = moves[:best_at]
    T = Triangulation(S)
    for m in moves:
        T.apply(m, prot)
    final = T.complex()
    log = FlipLog(initial, moves, canonical_hash(final), tuple(sorted(prot)))
    return ReduceResult(log, final, step, best_at, seed)


def is_boundary_of_4_simplex(S: SimplicialComplex) -> bool:
    return len(S.vertices) == 5 and len(S.facets) == 5 and S.dim == 3
