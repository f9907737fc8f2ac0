"""Command line front end: ``simpcx <command> ...`` (or ``python -m simpcx``).

A complex argument is either a path to a ``.cplx`` file or the name of a
bundled fixture (see ``simpcx list-fixtures``).

Exit status: 0 for success / true, 1 for failure / false, 3 for an
inconclusive search, 2 for usage and input errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import fixtures as fx
from .collapse import (
    POINT,
    STRATEGIES,
    CollapseCertificate,
    check_lc_ball,
    check_lc_sphere,
    emit_clps,
    find_morse_vector,
    morse_inequalities_hold,
    read_clps,
    search_collapse,
    verify_certificate,
)
from .complex import (
    ComplexError,
    SimplicialComplex,
    boundary_complex,
    cone,
    format_face,
    manifold_check,
    parse_face_list,
    read_cplx,
    write_cplx,
)
from .flips import AnnealConfig, emit_flp, read_flp, reduce, replay
from .hierarchy import (
    Verdict,
    emit_tree,
    evasiveness_scan,
    is_nonevasive,
    is_shellable,
    is_vertex_decomposable,
    read_tree,
    verify_ne_tree,
    verify_vd_tree,
)
from .homology import reduced_homology
from .knots import GROUPS, KnotCycle, close_cycle, count_homs, knot_group, spanning_edges

EXIT = {Verdict.TRUE: 0, Verdict.FALSE: 1, Verdict.INCONCLUSIVE: 3}


def load(arg: str) -> SimplicialComplex:
    p = Path(arg)
    if p.exists():
        return read_cplx(p)
    return fx.load_fixture(arg)


def _faces(text: str | None):
    return parse_face_list(text) if text else []


def cmd_homology(a) -> int:
    C = load(a.complex)
    rep = manifold_check(C) if C.dim == 3 else None
    print(f"f-vector: {C.f_vector()}")
    if rep:
        print(f"type: {rep.kind}" + (f" ({'; '.join(rep.problems[:3])})" if rep.problems else ""))
    h = reduced_homology(C)
    for k, (b, tors) in enumerate(zip(h.betti, h.torsion)):
        print(f"H~{k}: rank {b}" + (f", torsion {' '.join(map(str, tors))}" if tors else ""))
    return 0


def cmd_collapse(a) -> int:
    C = load(a.complex)
    if a.target == POINT:
        target = POINT
    elif Path(a.target).exists():
        target = read_cplx(a.target)
    else:
        target = SimplicialComplex(_faces(a.target))
    res = search_collapse(C, target, a.seed, a.budget, a.strategy)
    print(res.describe())
    if res.success and a.output:
        Path(a.output).write_text(emit_clps(res.certificate, f"found with seed {a.seed}, strategy {a.strategy}"))
    return 0 if res.success else 3


def cmd_verify(a) -> int:
    C = load(a.complex)
    v = verify_certificate(C, read_clps(a.certificate))
    if v:
        crit = ", ".join(format_face(f) for f in v.critical)
        print("certificate verified" + (f"; critical faces: {crit}" if crit else ""))
        return 0
    print(f"certificate {v.describe()}")
    return 1


def cmd_morse(a) -> int:
    C = load(a.complex)
    wanted = tuple(int(x) for x in a.vector.split(","))
    seed, m, steps, seen = find_morse_vector(C, wanted, a.tries, a.seed, a.strategy)
    for vec, n in sorted(seen.items()):
        print(f"{vec}: {n}")
    if seed is None:
        print(f"{wanted} not found in {a.tries} runs")
        return 3
    ok = morse_inequalities_hold(C, wanted)
    print(f"{wanted} found with seed {seed}; Morse inequalities {'hold' if ok else 'FAIL'}")
    if a.output:
        Path(a.output).write_text(emit_clps(CollapseCertificate(steps, POINT), f"Morse vector {wanted}, seed {seed}"))
    return 0


def cmd_check_lc(a) -> int:
    C = load(a.complex)
    kind = manifold_check(C).kind
    if kind == "3-sphere":
        ev = check_lc_sphere(C, a.seed, a.budget, a.strategy)
        what = "removed facet"
    elif kind == "3-ball":
        ev = check_lc_ball(C, a.seed, a.budget, a.strategy)
        what = "boundary triangle left out"
    else:
        print(f"not a 3-ball or 3-sphere ({kind})")
        return 2
    if not ev:
        print(ev.note)
        return 3
    print(f"verified: LC ({what} {format_face(ev.witness)}, candidate {ev.tried})")
    if a.output:
        Path(a.output).write_text(emit_clps(ev.certificate, f"LC certificate, {what} {format_face(ev.witness)}"))
    return 0


def _decision(a, d, name: str) -> int:
    print(f"{name}: {d.verdict.value} ({d.explored} search nodes)")
    if d.verdict is Verdict.TRUE and a.output and d.witness is not None:
        Path(a.output).write_text(emit_tree(d.witness))
    return EXIT[d.verdict]


def cmd_check_ne(a) -> int:
    return _decision(a, is_nonevasive(load(a.complex), a.budget), "non-evasive")


def cmd_check_vd(a) -> int:
    return _decision(a, is_vertex_decomposable(load(a.complex), a.budget), "vertex decomposable")


def cmd_check_shellable(a) -> int:
    d = is_shellable(load(a.complex), a.budget)
    print(f"shellable: {d.verdict.value} ({d.explored} states)")
    if d.verdict is Verdict.TRUE:
        print("shelling: " + ", ".join(format_face(F) for F in d.witness))
    return EXIT[d.verdict]


def cmd_scan_evasive(a) -> int:
    k = a.k if a.k is not None else a.k_opt
    if k is None:
        print("error: give a subset size", file=sys.stderr)
        return 2
    rows = evasiveness_scan(load(a.complex), k)
    hits = [S for S, ok in rows if ok]
    for S in hits:
        print(" ".join(map(str, S)))
    print(f"{len(hits)} of {len(rows)} {k}-subsets leave an acyclic deletion")
    return 0


def cmd_verify_tree(a) -> int:
    C = load(a.complex)
    tree = read_tree(a.tree)
    chk = verify_vd_tree(C, tree) if a.vd else verify_ne_tree(C, tree)
    print("tree accepted" if chk.ok else f"tree rejected at {chk.path}: {chk.reason}")
    return 0 if chk.ok else 1


def cmd_flip_reduce(a) -> int:
    S = load(a.complex)
    cfg = AnnealConfig.from_json(a.config) if a.config else None
    r = reduce(S, a.seed, a.budget, _faces(a.protect), a.allow_1_4, cfg)
    print(f"{S.f_vector()} -> {r.f_vector} in {len(r.log)} moves ({r.steps} annealing steps, seed {a.seed})")
    if a.output:
        Path(a.output).write_text(emit_flp(r.log))
    if a.final:
        write_cplx(r.complex, a.final, f"reduced from {a.complex} with seed {a.seed}")
    return 0


def cmd_replay(a) -> int:
    S = load(a.complex)
    try:
        end = replay(S, read_flp(a.log))
    except ComplexError as e:
        print(f"replay failed: {e}")
        return 1
    print(f"replayed to {end.f_vector()}")
    return 0


def cmd_knot_homs(a) -> int:
    C = load(a.complex)
    if a.edge:
        (e,) = _faces(a.edge)
        K = close_cycle(C, e)
        C = C.union(cone(max(C.vertices) + 1, boundary_complex(C)))
    else:
        K = KnotCycle(tuple(int(x) for x in a.cycle.replace(",", " ").split()))
    P = knot_group(C, K)
    print(f"knot {K}: {P}")
    rank, tors = P.abelianization()
    print(f"abelianization: Z^{rank}" + "".join(f" + Z/{t}" for t in tors))
    for g in a.groups.split(","):
        G = GROUPS[g]
        n = count_homs(P, G)
        print(f"homs to {g}: {n}" + (" (more than the cyclic baseline, so knotted)" if n > G.order else ""))
    return 0


def cmd_spanning_edges(a) -> int:
    B = load(a.complex)
    for e in spanning_edges(B):
        print(f"{format_face(e)}: {close_cycle(B, e)}")
    return 0


def cmd_list_fixtures(a) -> int:
    for name in fx.fixture_names():
        info = fx.fixture_info(name)
        props = ", ".join(("" if p["holds"] else "non-") + p["property"] + f" [{p['status']}]" for p in info["properties"])
        print(f"{name:24s} {str(tuple(info['f_vector'])):22s} {info['kind']:9s} {props}")
    print("prefix any name with sd_ for its barycentric subdivision")
    return 0


def cmd_export(a) -> int:
    fx.export_fixture(a.name, a.output)
    return 0


def cmd_verify_all(a) -> int:
    from .acceptance import verify_all

    crit = [int(x) for x in a.criteria.split(",")] if a.criteria else None
    rep = verify_all(a.fast, crit, log=lambda s: print(s, file=sys.stderr))
    print(rep.text())
    if a.json:
        Path(a.json).write_text(json.dumps(rep.records(), indent=1) + "\n")
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simpcx", description="Tools for triangulated 3-balls and 3-spheres.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, complex=True):
        s = sub.add_parser(name, help=help)
        if complex:
            s.add_argument("complex", help=".cplx file or fixture name")
        s.set_defaults(fn=fn)
        return s

    def search_opts(s, budget):
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--budget", type=int, default=budget)
        s.add_argument("--strategy", choices=STRATEGIES, default="uniform")

    add("homology", cmd_homology, "f-vector, manifold type and reduced homology")
    s = add("collapse", cmd_collapse, "random collapse search")
    s.add_argument("--target", default=POINT, help='"point", a .cplx file, or faces like "1 2 3, 2 3 4"')
    search_opts(s, 100)
    s.add_argument("--restarts", dest="budget", type=int, help="alias for --budget")
    s.add_argument("-o", "--output", "--out", help="write the certificate (.clps)")
    s = add("verify", cmd_verify, "replay a collapse or Morse certificate")
    s.add_argument("certificate")
    s = add("morse", cmd_morse, "search for a discrete Morse vector")
    s.add_argument("--vector", default="1,0,0,0")
    s.add_argument("--tries", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--strategy", choices=STRATEGIES, default="uniform")
    s.add_argument("-o", "--output")
    s = add("check-lc", cmd_check_lc, "search for a local constructibility certificate")
    search_opts(s, 100)
    s.add_argument("-o", "--output")
    for name, fn, what in (("check-ne", cmd_check_ne, "non-evasiveness"), ("check-vd", cmd_check_vd, "vertex decomposability")):
        s = add(name, fn, f"decide {what}")
        s.add_argument("--budget", type=int, default=200_000)
        s.add_argument("-o", "--output", help="write the decision tree")
    s = add("check-shellable", cmd_check_shellable, "decide shellability")
    s.add_argument("--budget", type=int, default=2_000_000)
    s = add("scan-evasive", cmd_scan_evasive, "vertex subsets whose deletion is acyclic")
    s.add_argument("k", type=int, nargs="?")
    s.add_argument("-k", dest="k_opt", type=int, help="subset size (alternative to the positional)")
    s = add("verify-tree", cmd_verify_tree, "check an NE or VD decision tree")
    s.add_argument("tree")
    s.add_argument("--vd", action="store_true")
    s = add("flip-reduce", cmd_flip_reduce, "anneal a 3-sphere with bistellar flips")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=10_000)
    s.add_argument("--protect", help='edges to keep, e.g. "1 2, 2 3, 1 3"')
    s.add_argument("--allow-1-4", action="store_true", help="also use vertex insertions")
    s.add_argument("--no-insert", dest="allow_1_4", action="store_false", help="never insert vertices (default)")
    s.add_argument("--config", help="JSON file with annealing parameters")
    s.add_argument("-o", "--output", "--out", help="write the move log (.flp)")
    s.add_argument("--final", help="write the reduced complex (.cplx)")
    s = add("replay", cmd_replay, "replay a flip log")
    s.add_argument("log")
    s = add("knot-homs", cmd_knot_homs, "knot group and homomorphism counts")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--cycle", help='vertex cycle in a sphere, e.g. "1 2 3"')
    g.add_argument("--edge", help="spanning edge of a ball, closed through the boundary")
    s.add_argument("--groups", "--group", default="S3,S4", help="comma separated, from " + ", ".join(GROUPS))
    add("spanning-edges", cmd_spanning_edges, "spanning edges of a 3-ball and their closing cycles")
    add("list-fixtures", cmd_list_fixtures, "bundled complexes", complex=False)
    s = add("export", cmd_export, "write a fixture as .cplx", complex=False)
    s.add_argument("name")
    s.add_argument("output")
    s = add("verify-all", cmd_verify_all, "acceptance suite and fixture table", complex=False)
    s.add_argument("--fast", action="store_true", help="skip long and probabilistic rows")
    s.add_argument("--criteria", help="comma separated criterion numbers")
    s.add_argument("--json", help="also write machine-readable rows")
    return p


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if a.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return a.fn(a)
    except (ComplexError, OSError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
