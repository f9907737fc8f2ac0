import os

from hypothesis import HealthCheck, settings, strategies as st

from simpcx.complex import SimplicialComplex

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# filled by test_acceptance, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def complexes(draw, max_vertices=7, max_facets=6, max_dim=3):
    """Small random complexes on vertices 0..max_vertices-1."""
    n = draw(st.integers(2, max_vertices))
    face = st.lists(st.integers(0, n - 1), min_size=1, max_size=max_dim + 1, unique=True)
    facets = draw(st.lists(face, min_size=1, max_size=max_facets))
    return SimplicialComplex(facets)


@st.composite
def pure_complexes(draw, dim=2, max_vertices=7, max_facets=6):
    n = draw(st.integers(dim + 1, max_vertices))
    face = st.lists(st.integers(0, n - 1), min_size=dim + 1, max_size=dim + 1, unique=True)
    return SimplicialComplex(draw(st.lists(face, min_size=1, max_size=max_facets)))
