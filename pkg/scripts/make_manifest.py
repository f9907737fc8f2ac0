"""Regenerate src/simpcx/data/manifest.json.

Digests cover every transcribed table and certificate.  Expected f-vectors and
classifications are written by hand below and only cross-checked here, so a
bad transcription shows up as a mismatch rather than being silently recorded.
"""
import hashlib
import json
import sys
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "simpcx" / "data"

# name -> (f-vector, kind, trefoils, [(property, holds, status)])
# status: verified = decided by this package, evidence = search failure plus
# knot-group hom counts, cited = taken from the literature without a check.
FIXTURES = {
    "B_7_10": ((7, 21, 25, 10), "3-ball", 0, [("shellable", True, "verified"), ("NE", True, "verified"), ("VD", False, "verified")]),
    "S_8_20": ((8, 28, 40, 20), "3-sphere", 0, [("VD", True, "verified")]),
    "B_9_18": ((9, 33, 43, 18), "3-ball", 0, [("constructible", True, "verified"), ("NE", True, "verified"), ("shellable", False, "verified")]),
    "S_10_32": ((10, 42, 64, 32), "3-sphere", 0, [("shellable", True, "verified")]),
    "B_12_38": ((12, 58, 85, 38), "3-ball", 1, [("collapsible", True, "verified"), ("NE", False, "verified"), ("LC", False, "evidence")]),
    "S_13_56": ((13, 69, 112, 56), "3-sphere", 1, [("LC", True, "verified"), ("constructible", False, "evidence")]),
    "B_13_55": ((13, 69, 112, 55), "3-ball", 1, [("LC", True, "verified"), ("constructible", False, "evidence")]),
    "R_14_41": ((14, 66, 94, 41), "3-ball", 0, [("NE", True, "verified"), ("shellable", False, "cited")]),
    "B_15_66": ((15, 93, 145, 66), "3-ball", 2, [("collapsible", False, "evidence")]),
    "S_16_92": ((16, 108, 184, 92), "3-sphere", 2, [("LC", True, "verified"), ("constructible", False, "evidence")]),
    "B_16_91": ((16, 108, 184, 91), "3-ball", 2, [("LC", True, "verified"), ("constructible", False, "evidence")]),
    "B_17_95_reconstructed": ((17, 126, 205, 95), "3-ball", 3, [("collapsible", False, "evidence")]),
    "S_18_125": ((18, 143, 250, 125), "3-sphere", 3, [("LC", False, "evidence")]),
    "B_18_124": ((18, 143, 250, 124), "3-ball", 3, [("collapsible", False, "evidence")]),
    "B_32_140": ((32, 197, 306, 140), "3-ball", 2, []),
    "S_33_192": ((33, 225, 384, 192), "3-sphere", 2, [("knotted", True, "evidence")]),
    "B_43_214": ((43, 291, 463, 214), "3-ball", 3, []),
    "S_44_284": ((44, 328, 568, 284), "3-sphere", 3, [("knotted", True, "evidence")]),
}

SOURCES = {
    "S_8_20": "B_7_10 plus the cone from 7 over its boundary",
    "S_10_32": "B_9_18 plus the cone from 9 over its boundary",
    "S_13_56": "B_12_38 plus the cone from 1 over its boundary",
    "B_13_55": "S_13_56 minus the facet 1 2 6 9",
    "B_15_66": "S_16_92 minus the open star of 1",
    "B_16_91": "S_16_92 minus the facet 1 9 14 15",
    "B_17_95_reconstructed": "S_18_125 minus the open star of 2 (reconstructed: the removed vertex is a choice)",
    "B_18_124": "S_18_125 minus the facet 1 2 4 9",
    "B_32_140": "S_33_192_spindles plus S_33_192_local_cones",
    "S_33_192": "B_32_140 plus the cone from 33 over its boundary, checked against S_33_192_cone",
    "B_43_214": "S_44_284_spindles plus S_44_284_local_cones",
    "S_44_284": "B_43_214 plus the cone from 44 over its boundary, checked against S_44_284_cone",
}


# how the knot of each fixture is exhibited: a 3-edge cycle in a sphere, or a
# knotted spanning edge of a ball closed up through its boundary
KNOTS = {
    "B_12_38": {"edge": [2, 3]},
    "S_13_56": {"cycle": [1, 2, 3], "sphere": "S_13_56"},
    "B_13_55": {"cycle": [1, 2, 3], "sphere": "S_13_56"},
    "B_15_66": {"edge": [2, 3]},
    "S_16_92": {"cycle": [1, 2, 3], "sphere": "S_16_92"},
    "B_16_91": {"cycle": [1, 2, 3], "sphere": "S_16_92"},
    "B_17_95_reconstructed": {"edge": [1, 3]},
    "S_18_125": {"cycle": [1, 2, 3], "sphere": "S_18_125"},
    "B_18_124": {"cycle": [1, 2, 3], "sphere": "S_18_125"},
    "S_33_192": {"cycle": [1, 2, 3], "sphere": "S_33_192"},
    "S_44_284": {"cycle": [1, 2, 3], "sphere": "S_44_284"},
}


def main():
    files = {}
    for p in sorted(DATA.iterdir()):
        if p.suffix in (".cplx", ".clps", ".tree", ".flp"):
            files[p.name] = hashlib.sha256(p.read_bytes()).hexdigest()
    fixtures = {}
    for name, (f, kind, t, props) in FIXTURES.items():
        fixtures[name] = {
            "source": SOURCES.get(name, name + ".cplx"),
            "f_vector": list(f),
            "kind": kind,
            "trefoils": t,
            "knot": KNOTS.get(name),
            "properties": [{"property": p, "holds": h, "status": s} for p, h, s in props],
        }
    out = DATA / "manifest.json"
    out.write_text(json.dumps({"files": files, "fixtures": fixtures}, indent=1) + "\n")

    sys.path.insert(0, str(DATA.parents[1]))
    from simpcx.complex import manifold_check
    from simpcx.fixtures import load_fixture, manifest

    manifest.cache_clear()
    bad = 0
    for name, (f, kind, _, _) in FIXTURES.items():
        C = load_fixture(name)
        if C.f_vector() != f or manifold_check(C).kind != kind:
            print(f"MISMATCH {name}: {C.f_vector()} {manifold_check(C).kind}")
            bad += 1
    print(f"wrote {out} ({len(files)} files, {len(fixtures)} fixtures, {bad} mismatches)")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
