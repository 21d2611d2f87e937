import time

from hypothesis import given, settings, strategies as st

from conftest import ONE_TET_NO_VERTICES
from oracles import brute_force_vertices, square_subsystem_rays
from tsurf.enumeration import (
    double_description, enumerate_admissible_vertices, extreme_rays, support_pattern,
    vertices_from_patterns,
)
from tsurf.qmatching import QMatrix, build_q_matrix, is_admissible, verify_q_matching
from tsurf.triangulation import IdealTriangulation

FIG8_VERTICES = [(0, 0, 2, 1, 0, 0), (0, 1, 0, 0, 0, 2), (0, 1, 0, 0, 2, 0), (2, 0, 0, 1, 0, 0)]


def test_figure_eight_vertices(fig8):
    start = time.perf_counter()
    found = enumerate_admissible_vertices(fig8)
    assert time.perf_counter() - start < 5
    assert [v.primitive for v in found] == FIG8_VERTICES
    q = build_q_matrix(fig8)
    assert set(FIG8_VERTICES) == set(brute_force_vertices(q.rows, 2))
    for v in found:
        assert is_admissible(v.primitive) and verify_q_matching(q, v.primitive)
        assert sum(v.projective) == 1
        assert v.support == support_pattern(v.primitive)


def test_vertex_counts(census):
    # counts agree with an external normal-surface enumerator (checked during development)
    expected = {"m003": 4, "m004": 4, "m009": 6, "m129": 20, "m203": 24, "s776": 56, "t12067": 90}
    for name, tri in census.items():
        found = enumerate_admissible_vertices(tri)
        assert len(found) == expected[name]
        assert len({v.primitive for v in found}) == len(found)


def test_pattern_route_agrees(fig8):
    import itertools
    q = build_q_matrix(fig8)
    patterns = itertools.product([None, 0, 1, 2], repeat=2)
    assert vertices_from_patterns(q, patterns) == enumerate_admissible_vertices(fig8)


def test_trivial_admissible_kernel():
    tri = IdealTriangulation.from_data(ONE_TET_NO_VERTICES)
    assert enumerate_admissible_vertices(tri) == []


def test_extreme_rays_examples(fig8):
    q = build_q_matrix(fig8)
    assert extreme_rays((None, None), q) == []
    line = QMatrix(((2, 0, 0, -1, 0, 0),), (0,), tuple((t, i) for t in range(2) for i in range(3)))
    assert extreme_rays((0, 0), line) == [(1, 0, 0, 2, 0, 0)]


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.lists(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=4)))
def test_double_description_matches_subsystems(rows):
    n = len(rows[0])
    assert double_description(rows, n) == square_subsystem_rays(rows, n)
