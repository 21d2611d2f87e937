import json
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from tsurf.triangulation import (
    EVEN_PERMS, IdealTriangulation, Perm4, TriangulationError, builtin, builtin_names,
    emit_triangulation, even_completion, iter_slots, parse_triangulation, perm_sign,
    positive_corner_order,
)

FIG8_GLUINGS = [
    [[1, [0, 1, 3, 2]], [1, [1, 2, 3, 0]], [1, [2, 3, 1, 0]], [1, [2, 1, 0, 3]]],
    [[0, [0, 1, 3, 2]], [0, [3, 2, 0, 1]], [0, [3, 0, 1, 2]], [0, [2, 1, 0, 3]]],
]


def doc(gluings):
    return json.dumps({"tets": len(gluings), "gluings": gluings})


def test_perm_helpers():
    assert perm_sign((0, 1, 2, 3)) == 1
    assert perm_sign((1, 0, 2, 3)) == -1
    p = Perm4((1, 2, 3, 0))
    assert p.compose(p.inverse()) == (0, 1, 2, 3)
    assert len(EVEN_PERMS) == 12
    for a in range(4):
        for b in range(4):
            if a != b:
                assert perm_sign((a, b) + even_completion(a, b)) == 1


def test_positive_corner_order_is_odd():
    for v in range(4):
        assert perm_sign((v,) + positive_corner_order(v)) == -1


def test_one_tet_self_glued_is_valid(one_tet):
    assert one_tet.tet_count == 1
    assert sum(e.degree for e in one_tet.edge_classes) == 6


def test_non_involutive_gluing_rejected():
    gluings = [row[:] for row in FIG8_GLUINGS]
    gluings = json.loads(json.dumps(gluings))
    # face (0,1) goes to (1,2) but (1,2) goes to (0,3)
    gluings[1][2] = [0, [0, 1, 3, 2]]
    with pytest.raises(TriangulationError, match=r"non-involutive gluing at \(1,2\)"):
        parse_triangulation(doc(gluings))


def test_unglued_and_even_gluings_rejected():
    gl = json.loads(json.dumps(FIG8_GLUINGS))
    gl[0][3] = None
    with pytest.raises(TriangulationError, match=r"unglued face at \(0,3\)"):
        parse_triangulation(doc(gl))
    gl = json.loads(json.dumps(FIG8_GLUINGS))
    gl[0][0] = [1, [1, 0, 3, 2]]
    with pytest.raises(TriangulationError, match="orientation-preserving"):
        parse_triangulation(doc(gl))


@pytest.mark.parametrize("text", ["", "[]", '{"tets": 0, "gluings": []}',
                                  '{"tets": 1, "gluings": [[1, 2]]}'])
def test_malformed_documents(text):
    with pytest.raises(TriangulationError, match="malformed|no tetrahedra"):
        parse_triangulation(text)


def test_figure_eight_structure(fig8):
    assert parse_triangulation(doc(FIG8_GLUINGS)) == fig8
    assert [e.degree for e in fig8.edge_classes] == [6, 6]
    assert len(fig8.cusp_links) == 1
    link = fig8.cusp_links[0]
    assert len(link.triangles) == 8
    assert link.euler_characteristic == 0


def _hand_orbits(gluings):
    """Edge orbits by flooding slot identifications across faces (no orientation)."""
    slots = {(t, frozenset(p)) for t in range(len(gluings))
             for p in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]}
    parent = {s: s for s in slots}

    def find(s):
        while parent[s] != s:
            s = parent[s]
        return s

    for t, row in enumerate(gluings):
        for f, (nbr, perm) in enumerate(row):
            for pair in [(a, b) for a in range(4) for b in range(a + 1, 4) if f not in (a, b)]:
                image = frozenset(perm[v] for v in pair)
                parent[find((t, frozenset(pair)))] = find((nbr, image))
    return Counter(find(s) for s in slots)


def test_edge_orbits_match_hand_count(census):
    for name, tri in census.items():
        data = json.loads(emit_triangulation(tri))["gluings"]
        assert sorted(_hand_orbits(data).values()) == sorted(e.degree for e in tri.edge_classes)


def test_every_slot_once(census):
    for tri in census.values():
        seen = Counter(emb.slot for e in tri.edge_classes for emb in e.embeddings)
        assert set(seen) == {(t, frozenset((a, b))) for t, a, b in iter_slots(tri)}
        assert set(seen.values()) == {1}


def test_edge_cycle_conventions(census):
    for tri in census.values():
        for edge in tri.edge_classes:
            first = edge.embeddings[0]
            assert first.a < first.b
            assert min(emb.slot for emb in edge.embeddings)[0] == first.tet
            for emb in edge.embeddings:
                assert perm_sign(emb.vertices) == 1


def test_sphere_link_rejected(one_tet):
    with pytest.raises(TriangulationError, match="cusp link is not a torus"):
        one_tet.cusp_links


def test_link_incidence_counts(census):
    for tri in census.values():
        for link in tri.cusp_links:
            assert 3 * len(link.triangles) == 2 * len(link.edges)
            assert link.euler_characteristic == 0


def test_cusp_counts(census):
    expected = {"m003": 1, "m004": 1, "m009": 1, "m129": 2, "m203": 2, "s776": 3, "t12067": 3}
    for name, tri in census.items():
        assert len(tri.cusp_links) == expected[name]


def _triangle_boundary(tri, link, t, v):
    from tsurf.triangulation import oriented_link_edge
    w = positive_corner_order(v)
    out = []
    for k in range(3):
        _, e, s = oriented_link_edge(tri, t, v, w[k], w[(k + 1) % 3])
        out.append((e, s))
    return out


def test_cocycles_and_basis(census):
    for tri in census.values():
        for link in tri.cusp_links:
            # cocycle condition on every triangle
            for t, v in link.triangles:
                boundary = _triangle_boundary(tri, link, t, v)
                assert link.coordinates(boundary) == (0, 0)
            # basis loops are closed and dual to the cocycles
            for k, loop in enumerate(link.basis):
                head = None
                for e, s in loop:
                    ends = link.edges[e].ends
                    tail_, head_ = ends if s == 1 else ends[::-1]
                    assert head is None or head == tail_
                    head = head_
                first = link.edges[loop[0][0]].ends
                assert head == (first[0] if loop[0][1] == 1 else first[1])
                expect = (1, 0) if k == 0 else (0, 1)
                assert link.coordinates(loop) == expect


def test_link_homology_is_rank_two(census):
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form
    for tri in census.values():
        for link in tri.cusp_links:
            vindex = {p: i for i, p in enumerate(link.vertices)}
            d1 = sympy.zeros(len(link.vertices), len(link.edges))
            for e in link.edges:
                d1[vindex[e.ends[1]], e.id] += 1
                d1[vindex[e.ends[0]], e.id] -= 1
            d2 = sympy.zeros(len(link.edges), len(link.triangles))
            for j, (t, v) in enumerate(link.triangles):
                for e, s in _triangle_boundary(tri, link, t, v):
                    d2[e, j] += s
            assert (d1 * d2).is_zero_matrix
            r1, r2 = d1.rank(), d2.rank()
            assert len(link.edges) - r1 - r2 == 2
            snf = smith_normal_form(d2, domain=sympy.ZZ)
            assert all(abs(snf[i, i]) in (0, 1) for i in range(min(snf.shape)))


def test_round_trip(census):
    for tri in census.values():
        assert parse_triangulation(emit_triangulation(tri)) == tri
    assert set(builtin_names()) >= {"m004", "m003", "t12067"}


perm_strategy = st.permutations(range(4)).map(tuple)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(builtin_names())), perm_strategy)
def test_relabelling_preserves_edge_degrees(name, sigma):
    """Relabelling the vertices of tetrahedron 0 (by an even perm) keeps the combinatorics."""
    if perm_sign(sigma) != 1:
        sigma = (sigma[1], sigma[0]) + sigma[2:]
    tri = builtin(name)
    s = Perm4(sigma)
    si = s.inverse()
    rows = []
    for t, row in enumerate(tri.gluings):
        new = [None] * 4
        for f, (nbr, perm) in enumerate(row):
            pre = si if t == 0 else Perm4((0, 1, 2, 3))
            post = s if nbr == 0 else Perm4((0, 1, 2, 3))
            composed = post.compose(perm.compose(pre))
            new[(s[f] if t == 0 else f)] = [nbr, list(composed)]
        rows.append(new)
    other = IdealTriangulation.from_data(rows)
    assert sorted(e.degree for e in other.edge_classes) == sorted(e.degree for e in tri.edge_classes)
    assert len(other.cusp_links) == len(tri.cusp_links)
