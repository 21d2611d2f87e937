"""Oriented ideal triangulations: gluing data, edge classes and cusp links.

Conventions
-----------
Face ``f`` of a tetrahedron is the face opposite vertex ``f``.  The gluing
``(nbr, perm)`` stored at ``(t, f)`` identifies face ``f`` of tetrahedron
``t`` with face ``perm[f]`` of tetrahedron ``nbr``, sending vertex ``v`` of
``t`` to vertex ``perm[v]`` of ``nbr``.  This is the SnapPea census
convention.  A tetrahedron with vertices listed as ``(0, 1, 2, 3)`` is
positively oriented, so every gluing of an oriented triangulation is an odd
permutation.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterator, Sequence

VERTEX_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class TriangulationError(ValueError):
    """Invalid triangulation data; ``location`` is a ``(tet, face)`` pair or None."""

    def __init__(self, message: str, location: tuple[int, int] | None = None):
        super().__init__(message)
        self.location = location


def perm_sign(p: Sequence[int]) -> int:
    """Sign (+1 even, -1 odd) of a permutation given by its image tuple."""
    sign = 1
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class Perm4(tuple):
    """A permutation of {0, 1, 2, 3}, stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, image: Sequence[int]):
        image = tuple(int(i) for i in image)
        if sorted(image) != [0, 1, 2, 3]:
            raise ValueError(f"not a permutation of {{0,1,2,3}}: {image}")
        return super().__new__(cls, image)

    def __call__(self, i: int) -> int:
        return self[i]

    def inverse(self) -> "Perm4":
        inv = [0] * 4
        for i, j in enumerate(self):
            inv[j] = i
        return Perm4(inv)

    def compose(self, other: Sequence[int]) -> "Perm4":
        """``self ∘ other``: apply ``other`` first."""
        return Perm4(self[other[i]] for i in range(4))

    @property
    def sign(self) -> int:
        return perm_sign(self)

    @property
    def is_even(self) -> bool:
        return self.sign == 1

    def __repr__(self) -> str:
        return "Perm4(" + "".join(map(str, self)) + ")"


IDENTITY = Perm4((0, 1, 2, 3))
EVEN_PERMS = tuple(Perm4(p) for p in permutations(range(4)) if perm_sign(p) == 1)


def even_completion(a: int, b: int) -> tuple[int, int]:
    """The unique ``(c, d)`` making ``(a, b, c, d)`` an even permutation."""
    c, d = (v for v in range(4) if v not in (a, b))
    if perm_sign((a, b, c, d)) == -1:
        c, d = d, c
    return c, d


def positive_corner_order(v: int) -> tuple[int, int, int]:
    """Anticlockwise corner order of the cusp triangle at vertex ``v``.

    The cusp torus is oriented as the boundary of the manifold (outward
    normal pointing into the cusp), which makes ``(w1, w2, w3)`` positive
    exactly when ``(v, w1, w2, w3)`` is an odd permutation.
    """
    w = [u for u in range(4) if u != v]
    if perm_sign([v] + w) == 1:
        w[1], w[2] = w[2], w[1]
    return tuple(w)


@dataclass(frozen=True)
class EdgeEmbedding:
    """One incidence of an edge class: edge ``a -> b`` of tetrahedron ``tet``.

    ``(a, b, c, d)`` is always even.  Walking around the edge enters ``tet``
    through face ``d`` (containing a, b, c) and leaves through face ``c``;
    this is a right-handed rotation about the oriented edge ``a -> b``.
    """

    tet: int
    a: int
    b: int
    c: int
    d: int

    @property
    def slot(self) -> tuple[int, frozenset]:
        return (self.tet, frozenset((self.a, self.b)))

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class EdgeClass:
    id: int
    embeddings: tuple[EdgeEmbedding, ...]

    @property
    def degree(self) -> int:
        return len(self.embeddings)

    @property
    def incidences(self) -> tuple[tuple[int, tuple[int, int]], ...]:
        """Cyclic list of ``(tet, (lo, hi))`` slots, in traversal order."""
        return tuple((e.tet, tuple(sorted((e.a, e.b)))) for e in self.embeddings)


@dataclass(frozen=True)
class LinkEdge:
    """An edge of a cusp triangulation: two triangle sides glued together.

    ``sides[0]`` is ``(t, v, f)``: the side of cusp triangle ``(t, v)`` lying
    in face ``f``.  The edge is directed from ``corners[0]`` to
    ``corners[1]`` of that side (the two vertices other than v, f, ascending).
    """

    id: int
    sides: tuple[tuple[int, int, int], tuple[int, int, int]]
    corners: tuple[int, int]
    ends: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class CuspLink:
    id: int
    triangles: tuple[tuple[int, int], ...]
    vertices: tuple[tuple[int, int], ...]
    edges: tuple[LinkEdge, ...]
    basis: tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]
    cocycles: tuple[dict, dict] = field(repr=False, compare=False)
    side_index: dict = field(repr=False, compare=False, default_factory=dict)

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def coordinates(self, path: Sequence[tuple[int, int]]) -> tuple[int, int]:
        """Homology class of a closed edge path ``[(edge id, ±1), ...]``."""
        return tuple(sum(sign * phi[e] for e, sign in path) for phi in self.cocycles)


@dataclass(frozen=True)
class IdealTriangulation:
    gluings: tuple[tuple[tuple[int, Perm4], ...], ...]

    def __post_init__(self):
        _validate(self.gluings)

    @property
    def tet_count(self) -> int:
        return len(self.gluings)

    def glue(self, t: int, f: int) -> tuple[int, Perm4]:
        return self.gluings[t][f]

    @classmethod
    def from_data(cls, gluings) -> "IdealTriangulation":
        return cls(tuple(tuple((int(n), Perm4(p)) for n, p in tet) for tet in gluings))

    def to_document(self) -> dict:
        return {
            "tets": self.tet_count,
            "gluings": [[[n, list(p)] for n, p in tet] for tet in self.gluings],
        }

    @cached_property
    def edge_classes(self) -> tuple[EdgeClass, ...]:
        return tuple(compute_edge_classes(self))

    @cached_property
    def edge_lookup(self) -> dict:
        """``(t, v, w) -> (edge id, end, position)`` for every ordered pair v != w.

        ``end`` is 0 when ``w`` is the tail of the edge (so ``v`` is the head,
        the end at which traversal order reads anticlockwise) and 1 otherwise.
        """
        lookup = {}
        for edge in self.edge_classes:
            for pos, emb in enumerate(edge.embeddings):
                lookup[(emb.tet, emb.b, emb.a)] = (edge.id, 0, pos)
                lookup[(emb.tet, emb.a, emb.b)] = (edge.id, 1, pos)
        return lookup

    @cached_property
    def cusp_links(self) -> tuple[CuspLink, ...]:
        return tuple(compute_cusp_links(self))

    @cached_property
    def cusp_of_vertex(self) -> dict:
        return {tri: link.id for link in self.cusp_links for tri in link.triangles}


def _validate(gluings) -> None:
    n = len(gluings)
    if n == 0:
        raise TriangulationError("triangulation has no tetrahedra")
    for t, tet in enumerate(gluings):
        if len(tet) != 4:
            raise TriangulationError(f"tetrahedron {t} has {len(tet)} faces listed", (t, 0))
        for f, entry in enumerate(tet):
            if entry is None:
                raise TriangulationError(f"unglued face at ({t},{f})", (t, f))
            nbr, perm = entry
            if not 0 <= nbr < n:
                raise TriangulationError(f"neighbour out of range at ({t},{f})", (t, f))
            if perm.sign != -1:
                raise TriangulationError(
                    f"orientation-preserving (even) gluing at ({t},{f})", (t, f))
    for t, tet in enumerate(gluings):
        for f, (nbr, perm) in enumerate(tet):
            g = perm[f]
            back_nbr, back_perm = gluings[nbr][g]
            if back_nbr != t or back_perm.compose(perm) != IDENTITY:
                raise TriangulationError(f"non-involutive gluing at ({nbr},{g})", (nbr, g))


def parse_triangulation(text: str) -> IdealTriangulation:
    """Parse and validate a triangulation JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TriangulationError(f"malformed document: {exc}") from None
    if not isinstance(doc, dict) or "tets" not in doc or "gluings" not in doc:
        raise TriangulationError("malformed document: expected keys 'tets' and 'gluings'")
    n = doc["tets"]
    rows = doc["gluings"]
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise TriangulationError("malformed document: 'tets' must be a positive integer")
    if not isinstance(rows, list) or len(rows) != n:
        raise TriangulationError("malformed document: expected one gluing row per tetrahedron")
    gluings = []
    for t, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise TriangulationError(f"malformed document: tetrahedron {t} needs 4 faces", (t, 0))
        faces = []
        for f, entry in enumerate(row):
            if entry is None:
                raise TriangulationError(f"unglued face at ({t},{f})", (t, f))
            try:
                nbr, image = entry
                if not isinstance(nbr, int) or isinstance(nbr, bool):
                    raise TypeError
                perm = Perm4(image)
            except (TypeError, ValueError):
                raise TriangulationError(
                    f"malformed document: bad gluing at ({t},{f})", (t, f)) from None
            faces.append((nbr, perm))
        gluings.append(tuple(faces))
    return IdealTriangulation(tuple(gluings))


def emit_triangulation(tri: IdealTriangulation) -> str:
    return json.dumps(tri.to_document()) + "\n"


def load_triangulation(path) -> IdealTriangulation:
    with open(path, encoding="utf-8") as fh:
        return parse_triangulation(fh.read())


def _next_embedding(tri: IdealTriangulation, emb: EdgeEmbedding) -> EdgeEmbedding:
    nbr, perm = tri.glue(emb.tet, emb.c)
    return EdgeEmbedding(nbr, perm[emb.a], perm[emb.b], perm[emb.d], perm[emb.c])


def compute_edge_classes(tri: IdealTriangulation) -> list[EdgeClass]:
    """Edge classes with their cyclic incidence lists.

    Each cycle starts at its lexicographically lowest slot, oriented from
    the lower to the higher vertex, and proceeds by the right-hand rule.
    """
    seen: set = set()
    classes = []
    for t in range(tri.tet_count):
        for a, b in VERTEX_PAIRS:
            if (t, frozenset((a, b))) in seen:
                continue
            start = EdgeEmbedding(t, a, b, *even_completion(a, b))
            cycle = []
            emb = start
            while True:
                if emb.slot in seen:
                    raise TriangulationError(
                        f"edge through slot {emb.tet}:{sorted((emb.a, emb.b))} "
                        "is identified with itself in reverse")
                seen.add(emb.slot)
                cycle.append(emb)
                emb = _next_embedding(tri, emb)
                if emb == start:
                    break
            classes.append(EdgeClass(len(classes), tuple(cycle)))
    return classes


def _vertex_orbits(tri: IdealTriangulation) -> list[list[tuple[int, int]]]:
    seen = set()
    orbits = []
    for t in range(tri.tet_count):
        for v in range(4):
            if (t, v) in seen:
                continue
            orbit = []
            queue = deque([(t, v)])
            seen.add((t, v))
            while queue:
                s, u = queue.popleft()
                orbit.append((s, u))
                for f in range(4):
                    if f == u:
                        continue
                    nbr, perm = tri.glue(s, f)
                    nxt = (nbr, perm[u])
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
            orbits.append(sorted(orbit))
    return orbits


def compute_cusp_links(tri: IdealTriangulation) -> list[CuspLink]:
    """Cusp triangulations with a homology basis; every link must be a torus."""
    lookup = tri.edge_lookup
    links = []
    for cusp_id, triangles in enumerate(_vertex_orbits(tri)):
        vertices = sorted({(lookup[(t, v, w)][0], lookup[(t, v, w)][1])
                           for t, v in triangles for w in range(4) if w != v})
        edges = []
        side_to_edge = {}
        for t, v in triangles:
            for f in range(4):
                if f == v or (t, v, f) in side_to_edge:
                    continue
                nbr, perm = tri.glue(t, f)
                other = (nbr, perm[v], perm[f])
                y, z = (w for w in range(4) if w not in (v, f))
                ends = (lookup[(t, v, y)][:2], lookup[(t, v, z)][:2])
                edge = LinkEdge(len(edges), ((t, v, f), other), (y, z), ends)
                side_to_edge[(t, v, f)] = edge.id
                side_to_edge[other] = edge.id
                edges.append(edge)
        link = _LinkBuilder(tri, cusp_id, triangles, vertices, edges, side_to_edge)
        links.append(link.build())
    return links


def oriented_link_edge(tri: IdealTriangulation, t: int, v: int, w1: int, w2: int):
    """The cusp edge running from corner ``w1`` to corner ``w2`` of triangle (t, v).

    Returned as ``(cusp id, edge id, sign)`` where sign is +1 when the
    direction agrees with the edge's stored direction.
    """
    f = next(u for u in range(4) if u not in (v, w1, w2))
    cusp = tri.cusp_of_vertex[(t, v)]
    link = tri.cusp_links[cusp]
    edge = link.edges[link.side_index[(t, v, f)]]
    return cusp, edge.id, _side_sign(tri, edge, t, v, f, w1, w2)


def _side_sign(tri, edge: LinkEdge, t, v, f, w1, w2) -> int:
    if edge.sides[0] == (t, v, f):
        return 1 if (w1, w2) == edge.corners else -1
    # the stored side lives in the neighbour; transport the corners there
    _, perm = tri.glue(t, f)
    return 1 if (perm[w1], perm[w2]) == edge.corners else -1


class _LinkBuilder:
    """Checks one cusp link and builds a tree-cotree homology basis."""

    def __init__(self, tri, cusp_id, triangles, vertices, edges, side_to_edge):
        self.tri = tri
        self.cusp_id = cusp_id
        self.triangles = triangles
        self.vertices = vertices
        self.edges = edges
        self.side_to_edge = side_to_edge

    def boundary(self, t: int, v: int) -> list[tuple[int, int]]:
        """Positively oriented boundary of cusp triangle (t, v) as (edge, sign)."""
        w = positive_corner_order(v)
        path = []
        for k in range(3):
            w1, w2 = w[k], w[(k + 1) % 3]
            f = next(u for u in range(4) if u not in (v, w1, w2))
            edge = self.edges[self.side_to_edge[(t, v, f)]]
            path.append((edge.id, _side_sign(self.tri, edge, t, v, f, w1, w2)))
        return path

    def build(self) -> CuspLink:
        boundaries = {tri: self.boundary(*tri) for tri in self.triangles}
        uses = {}
        for tri, path in boundaries.items():
            for e, sign in path:
                uses.setdefault(e, []).append((tri, sign))
        chi = len(self.vertices) - len(self.edges) + len(self.triangles)
        orientable = all(len(u) == 2 and u[0][1] == -u[1][1] for u in uses.values())
        if chi != 0 or not orientable:
            raise TriangulationError(
                f"cusp link is not a torus (cusp {self.cusp_id}: chi={chi}, "
                f"orientable={orientable})")

        # primal spanning tree on cusp vertices
        adjacency = {p: [] for p in self.vertices}
        for edge in self.edges:
            adjacency[edge.ends[0]].append((edge.id, edge.ends[1], 1))
            adjacency[edge.ends[1]].append((edge.id, edge.ends[0], -1))
        root = self.vertices[0]
        parent = {root: None}
        queue = deque([root])
        while queue:
            p = queue.popleft()
            for e, q, sign in adjacency[p]:
                if q not in parent:
                    parent[q] = (e, p, sign)
                    queue.append(q)
        tree = {info[0] for info in parent.values() if info is not None}

        # dual spanning tree on triangles, avoiding primal tree edges
        tri_root = self.triangles[0]
        dual_parent = {tri_root: None}
        order = [tri_root]
        queue = deque([tri_root])
        while queue:
            tri = queue.popleft()
            for e, _ in boundaries[tri]:
                if e in tree:
                    continue
                (first, _), (second, _) = uses[e]
                other = second if first == tri else first
                if other not in dual_parent:
                    dual_parent[other] = (e, tri)
                    order.append(other)
                    queue.append(other)
        cotree = {info[0] for info in dual_parent.values() if info is not None}
        leftover = sorted(set(range(len(self.edges))) - tree - cotree)
        assert len(leftover) == 2, leftover

        def tree_path(p):
            path = []
            while parent[p] is not None:
                e, prev, sign = parent[p]
                path.append((e, sign))
                p = prev
            return path[::-1]  # root -> p

        def reverse(path):
            return [(e, -s) for e, s in path[::-1]]

        loops = []
        for g in leftover:
            tail, head = self.edges[g].ends
            loops.append(tuple(tree_path(tail) + [(g, 1)] + reverse(tree_path(head))))

        cocycles = []
        for g in leftover:
            phi = {e: 0 for e in range(len(self.edges))}
            phi[g] = 1
            # peel the dual tree from its leaves: each triangle fixes its parent edge
            for tri in reversed(order[1:]):
                e_par, _ = dual_parent[tri]
                total = sum(s * phi[e] for e, s in boundaries[tri] if e != e_par)
                sign = next(s for e, s in boundaries[tri] if e == e_par)
                phi[e_par] = -total * sign
            cocycles.append(phi)
        return CuspLink(self.cusp_id, tuple(self.triangles), tuple(self.vertices),
                        tuple(self.edges), tuple(loops), tuple(cocycles),
                        dict(self.side_to_edge))


def builtin_names() -> list[str]:
    from importlib import resources
    return sorted(p.name[:-5] for p in resources.files("tsurf.data").iterdir()
                  if p.name.endswith(".json"))


def builtin(name: str) -> IdealTriangulation:
    """Census triangulations shipped with the package (m004 = figure-eight knot)."""
    from importlib import resources
    text = resources.files("tsurf.data").joinpath(f"{name}.json").read_text()
    return parse_triangulation(text)


def iter_slots(tri: IdealTriangulation) -> Iterator[tuple[int, int, int]]:
    for t in range(tri.tet_count):
        for a, b in VERTEX_PAIRS:
            yield t, a, b
