"""Bundled complexes.

Facet tables live in ``data/`` as ``.cplx`` files whose SHA-256 digests are
recorded in ``data/manifest.json``.  Everything else (cones over boundaries,
star and facet removals, subdivisions) is assembled here in code, and the
manifest pins the f-vector and topological type every fixture must have.
"""
from __future__ import annotations

import functools
import hashlib
import json
from importlib import resources
from pathlib import Path

from .collapse import CollapseCertificate, parse_clps
from .complex import (
    ComplexError,
    SimplicialComplex,
    barycentric_subdivision,
    boundary_complex,
    cone,
    parse_cplx,
)

DATA = resources.files(__package__) / "data"
KNOT_EDGES = ((1, 2), (1, 3), (2, 3))


def data_text(name: str) -> str:
    return (DATA / name).read_text()


@functools.lru_cache(maxsize=None)
def manifest() -> dict:
    return json.loads(data_text("manifest.json"))


def checksum(name: str) -> str:
    return hashlib.sha256((DATA / name).read_bytes()).hexdigest()


def verify_checksums() -> list[str]:
    """Names of data files whose digest differs from the manifest."""
    return [n for n, h in manifest()["files"].items() if checksum(n) != h]


@functools.lru_cache(maxsize=None)
def _table(name: str) -> SimplicialComplex:
    return parse_cplx(data_text(name + ".cplx"))


def _coned(B: SimplicialComplex, apex: int) -> SimplicialComplex:
    return B.union(cone(apex, boundary_complex(B)))


def _assembled_ball(prefix: str) -> SimplicialComplex:
    return _table(prefix + "_spindles").union(_table(prefix + "_local_cones"))


def _assembled_sphere(prefix: str, apex: int) -> SimplicialComplex:
    S = _coned(_assembled_ball(prefix), apex)
    printed = _table(prefix + "_cone")
    if set(printed.facets) != {F for F in S.facets if apex in F}:
        raise ComplexError(f"cone over the boundary disagrees with the printed table {prefix}_cone")
    return S


def _s13() -> SimplicialComplex:
    return _coned(_table("B_12_38"), 1)


_BUILDERS = {
    "B_7_10": lambda: _table("B_7_10"),
    "S_8_20": lambda: _coned(_table("B_7_10"), 7),
    "B_9_18": lambda: _table("B_9_18"),
    "S_10_32": lambda: _coned(_table("B_9_18"), 9),
    "B_12_38": lambda: _table("B_12_38"),
    "S_13_56": _s13,
    "B_13_55": lambda: _s13().remove_face((1, 2, 6, 9)),
    "R_14_41": lambda: _table("R_14_41"),
    "B_15_66": lambda: _table("S_16_92").delete(1),
    "S_16_92": lambda: _table("S_16_92"),
    "B_16_91": lambda: _table("S_16_92").remove_face((1, 9, 14, 15)),
    "B_17_95_reconstructed": lambda: _table("S_18_125").delete(2),
    "S_18_125": lambda: _table("S_18_125"),
    "B_18_124": lambda: _table("S_18_125").remove_face((1, 2, 4, 9)),
    "B_32_140": lambda: _assembled_ball("S_33_192"),
    "S_33_192": lambda: _assembled_sphere("S_33_192", 33),
    "B_43_214": lambda: _assembled_ball("S_44_284"),
    "S_44_284": lambda: _assembled_sphere("S_44_284", 44),
}


def fixture_names(include_sd: bool = False) -> list[str]:
    names = list(_BUILDERS)
    if include_sd:
        names += ["sd_" + n for n in _BUILDERS]
    return names


@functools.lru_cache(maxsize=None)
def load_fixture(name: str) -> SimplicialComplex:
    """Load a bundled complex; ``sd_<name>`` gives its barycentric subdivision."""
    if name.startswith("sd_"):
        return barycentric_subdivision(load_fixture(name[3:]))
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise ComplexError(f"unknown fixture {name!r}; available: {', '.join(_BUILDERS)}") from None
    return build()


def fixture_info(name: str) -> dict:
    return manifest()["fixtures"][name]


def membranes(prefix: str) -> SimplicialComplex:
    """Membrane triangles printed for ``S_33_192`` or ``S_44_284``."""
    return _table(prefix + "_membranes")


def certificate(name: str) -> CollapseCertificate:
    return parse_clps(data_text(name + ".clps"))


def printed_boundary(name: str) -> SimplicialComplex:
    return _table(name + "_boundary")


def export_fixture(name: str, path: str | Path) -> None:
    from .complex import write_cplx

    write_cplx(load_fixture(name), path, comment=name)
