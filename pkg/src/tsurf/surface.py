"""Twisted-squares surfaces: assembly, boundary curves and their classification.

A surface is assembled from parallel twisted squares (one family per
quad-bearing tetrahedron) and thin strips along the edges, chosen by one
strip matching per edge.  Everything is combinatorial: a square is named
``(tet, sheet)``, a strip by ``(edge, 0-letter, ∞-letter)`` positions in
the end-0 corner word, and a boundary curve by the truncation arcs and
strip ends it runs through on the cusp tori.

Each cusp torus is cut into cells (one per arc-bounded piece of a cusp
triangle, one per chord-bounded piece of the small disk around each cusp
vertex) so that the complement of the curves, and its Euler
characteristic, can be computed exactly.  That decides which side of a
null-homotopic curve is the disk it bounds.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from math import gcd
from typing import Mapping, Sequence

from .edgecombinatorics import (
    INFINITY, StripMatching, corner_is_ascending, corner_sheets, corner_words, disk_regions,
    enumerate_strip_matchings, is_valid_matching, nest_index,
)
from .qmatching import build_q_matrix, is_admissible, quad_partner, quad_types
from .triangulation import IdealTriangulation, oriented_link_edge, perm_sign

CASE_CLOCKWISE = 1
CASE_ANTICLOCKWISE = 2
CASE_ESSENTIAL = 3


class SurfaceError(ValueError):
    pass


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, a):
        self.parent.setdefault(a, a)

    def find(self, a):
        self.add(a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self):
        out = defaultdict(list)
        for a in self.parent:
            out[self.find(a)].append(a)
        return out


def square_cycle(quad: int) -> tuple[int, int, int, int]:
    """Boundary cycle of a twisted square: ``0 -> q -> p -> r`` for parts {0,p}|{q,r}."""
    p = quad + 1
    q, r = sorted(v for v in range(1, 4) if v != p)
    return (0, q, p, r)


def arc_corners(v: int, quad: int) -> tuple[int, int]:
    """Corners ``(tail, head)`` of a square's arc in cusp triangle ``v``.

    The arc runs anticlockwise around its triangle, i.e. from ``w1`` to
    ``w2`` with ``(v, w1, w2, partner)`` odd.
    """
    u = quad_partner(quad, v)
    w1, w2 = (w for w in range(4) if w not in (v, u))
    if perm_sign((v, w1, w2, u)) == 1:
        w1, w2 = w2, w1
    return w1, w2


@dataclass(frozen=True)
class TwistedPiece:
    kind: str  # "square", "strip" or "cap"
    key: tuple


@dataclass(frozen=True)
class BoundaryCurve:
    id: int
    cusp: int
    arcs: tuple  # (tet, sheet, vertex, from corner, to corner)
    passages: tuple  # (edge, end, from letter index, to letter index)
    homology: tuple[int, int]
    left_region: int
    right_region: int
    case: int | None = None
    depth: int = 0
    orientation: int = 0  # for essential curves: +1/-1 against the cusp's primitive class

    @property
    def null_homotopic(self) -> bool:
        return self.homology == (0, 0)

    def to_document(self) -> dict:
        return {
            "id": self.id,
            "cusp": self.cusp,
            "class": list(self.homology),
            "case": self.case,
            "depth": self.depth,
            "orientation": self.orientation,
            "arcs": len(self.arcs),
        }


@dataclass(frozen=True)
class SurfaceComplex:
    tri: IdealTriangulation = field(repr=False, compare=False)
    x: tuple[int, ...]
    choice: Mapping[int, StripMatching] = field(compare=False)
    caps: tuple[int, ...] = ()

    @cached_property
    def words(self) -> dict:
        return {e.id: corner_words(self.tri, self.x, e.id) for e in self.tri.edge_classes}

    @cached_property
    def types(self) -> list:
        return quad_types(self.x)

    @cached_property
    def squares(self) -> list[tuple[int, int]]:
        return [(t, s) for t, info in enumerate(self.types) if info for s in range(info[1])]

    @cached_property
    def strips(self) -> list[tuple[int, int, int]]:
        return [(e, p, q) for e in sorted(self.choice) for p, q in self.choice[e].pairs]

    def count(self, t: int) -> int:
        info = self.types[t]
        return info[1] if info else 0

    def quad(self, t: int) -> int | None:
        info = self.types[t]
        return info[0] if info else None

    @property
    def pieces(self) -> list[TwistedPiece]:
        return ([TwistedPiece("square", sq) for sq in self.squares]
                + [TwistedPiece("strip", st) for st in self.strips]
                + [TwistedPiece("cap", (c,)) for c in self.caps])

    @cached_property
    def letter_index(self) -> dict:
        """``(t, v, w, sheet) -> (edge, end, index in that end's word)``."""
        index = {}
        for e, (w0, w1) in self.words.items():
            edge = self.tri.edge_classes[e]
            for end, word in ((0, w0), (1, w1)):
                for k, letter in enumerate(word.letters):
                    emb = edge.embeddings[letter.position]
                    v, w = (emb.b, emb.a) if end == 0 else (emb.a, emb.b)
                    index[(letter.tet, v, w, letter.sheet)] = (e, end, k)
        return index

    @cached_property
    def letter_at(self) -> dict:
        return {val: key for key, val in self.letter_index.items()}

    def partner_index(self, e: int, end: int, k: int) -> int:
        length = len(self.words[e][0])
        partner = self.choice[e].partner()
        if end == 0:
            return partner[k]
        return length - 1 - partner[length - 1 - k]

    # --- CW structure ---------------------------------------------------

    def square_sides(self, t: int, s: int):
        """Sides of square (t, s) as ``(p, q)`` along its canonical boundary cycle."""
        cyc = square_cycle(self.quad(t))
        return [(cyc[k], cyc[(k + 1) % 4]) for k in range(4)]

    def cell_counts(self) -> tuple[int, int, int]:
        """``(V, E, F)`` computed from the gluing lists."""
        verts = _UnionFind()
        edges = _UnionFind()
        for t, s in self.squares:
            for k, (p, q) in enumerate(self.square_sides(t, s)):
                side = ("sq", t, s, k)
                edges.add(side)
                # the endpoint of this side at vertex p is the letter (t, p, q, s)
                for v, w in ((p, q), (q, p)):
                    verts.union(("sqc", t, s, k, v), ("pt",) + self.letter_index[(t, v, w, s)])
        for e, p, q in self.strips:
            length = len(self.words[e][0])
            for which, k0 in enumerate((p, q)):
                side = ("st", e, p, which)
                edges.add(side)
                letter = self.words[e][0].letters[k0]
                emb = self.tri.edge_classes[e].embeddings[letter.position]
                edges.union(side, ("sq", letter.tet, letter.sheet,
                                   self._side_number(letter.tet, letter.sheet, emb.a, emb.b)))
                verts.union(("stc", e, p, which, 0), ("pt", e, 0, k0))
                verts.union(("stc", e, p, which, 1), ("pt", e, 1, length - 1 - k0))
        n_vertices = len({verts.find(a) for a in verts.parent})
        n_cusp_arcs = 4 * len(self.squares)
        n_strip_ends = 2 * len(self.strips)
        n_edges = len({edges.find(a) for a in edges.parent}) + n_cusp_arcs + n_strip_ends
        n_faces = len(self.squares) + len(self.strips) + len(self.caps)
        return n_vertices, n_edges, n_faces

    def _side_number(self, t, s, a, b) -> int:
        for k, (p, q) in enumerate(self.square_sides(t, s)):
            if {p, q} == {a, b}:
                return k
        raise SurfaceError(f"square ({t},{s}) has no side along {a}{b}")

    @property
    def chi_ledger(self) -> int:
        return len(self.squares) - len(self.strips) + len(self.caps)

    # --- derived topology ----------------------------------------------

    def side_direction(self, t: int, s: int, k: int) -> int:
        """+1 if side ``k`` of square (t, s), oriented along the cycle, runs tail to head."""
        p, q = self.square_sides(t, s)[k]
        return 1 if self.tri.edge_lookup[(t, q, p)][1] == 0 else -1

    @cached_property
    def _components(self):
        uf = _UnionFind()
        constraints = []
        for sq in self.squares:
            uf.add(("square",) + sq)
        for e, p, q in self.strips:
            word = self.words[e][0]
            ends = []
            for k0 in (p, q):
                letter = word.letters[k0]
                emb = self.tri.edge_classes[e].embeddings[letter.position]
                k = self._side_number(letter.tet, letter.sheet, emb.a, emb.b)
                ends.append((("square", letter.tet, letter.sheet),
                             self.side_direction(letter.tet, letter.sheet, k)))
                uf.union(("strip", e, p), ends[-1][0])
            constraints.append((ends[0][0], ends[1][0], ends[0][1] * ends[1][1]))
        # orientation: o1 * d1 == -o2 * d2
        orient_uf = {}
        graph = defaultdict(list)
        for a, b, d in constraints:
            rel = -d  # o_b = rel * o_a
            graph[a].append((b, rel))
            graph[b].append((a, rel))
        for sq in self.squares:
            node = ("square",) + sq
            if node in orient_uf:
                continue
            orient_uf[node] = 1
            stack = [node]
            while stack:
                cur = stack.pop()
                for nxt, rel in graph[cur]:
                    want = orient_uf[cur] * rel
                    if nxt not in orient_uf:
                        orient_uf[nxt] = want
                        stack.append(nxt)
        bad_roots = {uf.find(a) for a, b, d in constraints
                     if orient_uf[b] != orient_uf[a] * (-d)}
        classes = uf.classes()
        roots = sorted(classes, key=lambda r: min(classes[r]))
        return uf, roots, {r: r not in bad_roots for r in roots}, classes

    def components(self) -> list[dict]:
        uf, roots, orientable, classes = self._components
        caps_by_root = Counter()
        curves = {c.id: c for c in self.curve_cache}
        for c in self.caps:
            t, s = curves[c].arcs[0][:2]
            caps_by_root[uf.find(("square", t, s))] += 1
        out = []
        for idx, r in enumerate(roots):
            members = classes[r]
            n_sq = sum(1 for m in members if m[0] == "square")
            n_st = sum(1 for m in members if m[0] == "strip")
            out.append({
                "id": idx,
                "squares": n_sq,
                "strips": n_st,
                "caps": caps_by_root[r],
                "chi": n_sq - n_st + caps_by_root[r],
                "two_sided": orientable[r],
            })
        return out

    def orientability(self) -> list[bool]:
        return [c["two_sided"] for c in self.components()]

    @cached_property
    def regions(self) -> dict:
        return cusp_regions(self)

    @cached_property
    def curve_cache(self) -> list[BoundaryCurve]:
        return classify_curves(self, trace_boundary_curves(self))


def euler_characteristic(surface: SurfaceComplex) -> int:
    v, e, f = surface.cell_counts()
    return v - e + f


def components(surface: SurfaceComplex) -> list[dict]:
    return surface.components()


def orientability(surface: SurfaceComplex) -> list[bool]:
    return surface.orientability()


def strip_options(tri: IdealTriangulation, x: Sequence[int]) -> dict:
    """Per edge with a nonempty corner word: all admissible strip matchings."""
    out = {}
    for e in tri.edge_classes:
        w0, _ = corner_words(tri, x, e.id)
        if len(w0):
            out[e.id] = enumerate_strip_matchings(w0)
    return out


def all_choices(tri: IdealTriangulation, x: Sequence[int]) -> list[dict]:
    """Every combination of strip matchings, in lexicographic order of indices."""
    options = strip_options(tri, x)
    edges = sorted(options)
    return [dict(zip(edges, combo)) for combo in itertools.product(*(options[e] for e in edges))]


def choice_from_indices(tri, x, indices: Mapping[int, int]) -> dict:
    options = strip_options(tri, x)
    choice = {}
    for e, opts in options.items():
        k = indices.get(e, 0)
        if not 0 <= k < len(opts):
            raise SurfaceError(f"choice index out of range for edge {e}: {k} (has {len(opts)})")
        choice[e] = opts[k]
    for e in indices:
        if e not in options:
            if not any(ec.id == e for ec in tri.edge_classes):
                raise SurfaceError(f"no edge {e}")
            if indices[e] != 0:
                raise SurfaceError(f"choice index out of range for edge {e}: {indices[e]} (has 1)")
    return choice


def assemble_surface(tri: IdealTriangulation, x: Sequence[int],
                     choice: Mapping[int, StripMatching]) -> SurfaceComplex:
    x = tuple(int(v) for v in x)
    if any(v != int(v) for v in x):
        raise SurfaceError("quad vector must be integral")
    report = is_admissible(x, tri.tet_count)
    if not report:
        raise SurfaceError(f"quad vector is not admissible (tetrahedra "
                           f"{sorted(set(report.negative + report.multiple_types))})")
    residual = build_q_matrix(tri) @ x
    if any(residual):
        raise SurfaceError(f"quad vector fails the Q-matching equations: residual {residual}")
    choice = dict(choice)
    for e in tri.edge_classes:
        w0, _ = corner_words(tri, x, e.id)
        if len(w0) == 0:
            if e.id in choice and choice[e.id].pairs:
                raise SurfaceError(f"matching given for empty edge {e.id}")
            choice.pop(e.id, None)
            continue
        if e.id not in choice:
            raise SurfaceError(f"no strip matching chosen for edge {e.id}")
        if not is_valid_matching(w0, choice[e.id]):
            raise SurfaceError(f"matching inconsistent with the corner word at edge {e.id}")
    return SurfaceComplex(tri, x, choice)


# --- cusp pictures -------------------------------------------------------


@dataclass
class CuspRegions:
    """Complement of the boundary curves in one cusp torus."""

    piece_region: dict
    chi: dict  # region -> Euler characteristic of its closure


def cusp_regions(surface: SurfaceComplex) -> dict[int, CuspRegions]:
    tri = surface.tri
    uf = _UnionFind()
    link_edge_count = Counter()
    subseg = []
    wedge_points = []

    for link in tri.cusp_links:
        for t, v in link.triangles:
            for j in range(surface.count(t) + 1):
                uf.add(("H", t, v, j))
        for edge in link.edges:
            pieces = [_piece_at_side(surface, *side) for side in edge.sides]
            uf.union(*pieces)
            link_edge_count[pieces[0]] += 1

    for e, (w0, w1) in surface.words.items():
        edge = tri.edge_classes[e]
        for end, word in ((0, w0), (1, w1)):
            length = len(word)
            regions = disk_regions(length, surface.choice[e]) if length else []
            if end == 1 and length:
                # disk regions are computed on end-0 positions; mirror them
                regions0 = regions
                regions = [regions0[(length - 2 - k) % length] for k in range(length)]

            def disk(gap):
                return ("D", e, end, regions[gap % length] if length else 0)

            order = range(edge.degree) if end == 0 else reversed(range(edge.degree))
            k = 0
            for pos in order:
                emb = edge.embeddings[pos]
                v, w = (emb.b, emb.a) if end == 0 else (emb.a, emb.b)
                t = emb.tet
                x_t = surface.count(t)
                quad = surface.quad(t)
                m = 0 if quad is None else len(corner_sheets(v, w, quad, x_t))
                for r in range(m + 1):
                    if m == 0:
                        j = x_t
                    elif corner_is_ascending(v, w, quad):
                        j = r
                    else:
                        j = x_t - r
                    piece = disk(k - 1 + r)
                    uf.union(("H", t, v, j), piece)
                    subseg.append(piece)
                k += m
                wedge_points.append(disk(k - 1))

    region_of = {}
    roots = {}
    for piece in uf.parent:
        root = uf.find(piece)
        region_of[piece] = roots.setdefault(root, len(roots))
    chi = Counter()
    for piece, region in region_of.items():
        chi[region] += 1
    for piece, n in link_edge_count.items():
        chi[region_of[piece]] -= n
    for piece in subseg:
        chi[region_of[piece]] -= 1
    for piece in wedge_points:
        chi[region_of[piece]] += 1

    out = {link.id: CuspRegions({}, {}) for link in tri.cusp_links}
    for piece, region in region_of.items():
        cusp = _cusp_of_piece(tri, piece)
        out[cusp].piece_region[piece] = region
        out[cusp].chi[region] = chi[region]
    return out


def _cusp_of_piece(tri, piece) -> int:
    if piece[0] == "H":
        return tri.cusp_of_vertex[(piece[1], piece[2])]
    _, e, end, _ = piece
    emb = tri.edge_classes[e].embeddings[0]
    v = emb.b if end == 0 else emb.a
    return tri.cusp_of_vertex[(emb.tet, v)]


def _piece_at_side(surface: SurfaceComplex, t: int, v: int, f: int):
    x_t = surface.count(t)
    if x_t == 0:
        return ("H", t, v, 0)
    return ("H", t, v, 0 if f == quad_partner(surface.quad(t), v) else x_t)


def trace_boundary_curves(surface: SurfaceComplex) -> list[BoundaryCurve]:
    """Follow arcs and strip ends until every arc lies on a closed curve."""
    tri = surface.tri
    regions = surface.regions
    arcs = {}
    for t, s in surface.squares:
        quad = surface.quad(t)
        for v in range(4):
            w1, w2 = arc_corners(v, quad)
            arcs[(t, s, v)] = (w1, w2)
    by_tail = {}
    for (t, s, v), (w1, w2) in arcs.items():
        by_tail[surface.letter_index[(t, v, w1, s)]] = (t, s, v)

    curves = []
    used = set()
    for start in sorted(arcs):
        if start in used:
            continue
        arc_list, passages = [], []
        cur = start
        while True:
            if cur in used:
                raise SurfaceError(f"curve tracing revisited arc {cur}")
            used.add(cur)
            t, s, v = cur
            w1, w2 = arcs[cur]
            arc_list.append((t, s, v, w1, w2))
            e, end, k = surface.letter_index[(t, v, w2, s)]
            word = surface.words[e][end]
            if word.letters[k].symbol != INFINITY:
                raise SurfaceError("arc head is not an ∞-letter")
            k2 = surface.partner_index(e, end, k)
            passages.append((e, end, k, k2))
            nxt = by_tail.get((e, end, k2))
            if nxt is None:
                raise SurfaceError(f"dangling arc at edge {e} end {end}")
            if nxt == start:
                break
            cur = nxt
        path = []
        cusp = tri.cusp_of_vertex[(start[0], start[2])]
        for t, s, v, w1, w2 in arc_list:
            c, edge_id, sign = oriented_link_edge(tri, t, v, w1, w2)
            path.append((edge_id, sign))
        homology = tri.cusp_links[cusp].coordinates(path)
        sides = set()
        for t, s, v, w1, w2 in arc_list:
            j = nest_index(v, surface.quad(t), s, surface.count(t))
            reg = regions[cusp].piece_region
            sides.add((reg[("H", t, v, j + 1)], reg[("H", t, v, j)]))
        if len(sides) != 1:
            raise SurfaceError("inconsistent sides along a boundary curve")
        left, right = sides.pop()
        curves.append(BoundaryCurve(len(curves), cusp, tuple(arc_list), tuple(passages),
                                    homology, left, right))
    return curves


def _side_regions(curves, curve, region_chi):
    """Regions reachable from ``curve``'s left without crossing it; their total chi."""
    adjacency = defaultdict(list)
    for c in curves:
        if c.id == curve.id:
            continue
        adjacency[c.left_region].append(c.right_region)
        adjacency[c.right_region].append(c.left_region)
    seen = {curve.left_region}
    stack = [curve.left_region]
    while stack:
        r = stack.pop()
        for nxt in adjacency[r]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen, sum(region_chi[r] for r in seen)


def _primitive_class(h):
    g = gcd(*h)
    p = (h[0] // g, h[1] // g)
    if p[0] < 0 or (p[0] == 0 and p[1] < 0):
        p = (-p[0], -p[1])
    return p


def classify_curves(surface: SurfaceComplex, curves: Sequence[BoundaryCurve]) -> list[BoundaryCurve]:
    """Assign case 1 (null-homotopic, clockwise), 2 (anticlockwise) or 3 (essential).

    Clockwise/anticlockwise compares the curve direction with the boundary
    orientation of the disk it bounds: anticlockwise means the disk lies
    on the curve's left.  ``depth`` counts the null-homotopic curves whose
    disks contain the curve.
    """
    regions = surface.regions
    out = []
    disks = {}
    for c in curves:
        chi = regions[c.cusp].chi
        if not c.null_homotopic:
            out.append(replace(c, case=CASE_ESSENTIAL))
            continue
        if c.left_region == c.right_region:
            raise SurfaceError(f"null-homologous curve {c.id} does not separate")
        cusp_curves = [d for d in curves if d.cusp == c.cusp]
        left_side, left_chi = _side_regions(cusp_curves, c, chi)
        flipped = replace(c, left_region=c.right_region, right_region=c.left_region)
        right_side, right_chi = _side_regions(cusp_curves, flipped, chi)
        if (left_chi, right_chi) == (1, -1):
            disks[c.id] = left_side
            out.append(replace(c, case=CASE_ANTICLOCKWISE))
        elif (left_chi, right_chi) == (-1, 1):
            disks[c.id] = right_side
            out.append(replace(c, case=CASE_CLOCKWISE))
        else:
            raise SurfaceError(
                f"curve {c.id} splits its torus into pieces with chi {left_chi}, {right_chi}")
    final = []
    for c in out:
        depth = sum(1 for d, side in disks.items()
                    if d != c.id and out[d].cusp == c.cusp
                    and c.left_region in side and c.right_region in side)
        final.append(replace(c, depth=depth))
    return _orient_essential(final)


def _orient_essential(curves: list[BoundaryCurve]) -> list[BoundaryCurve]:
    by_cusp = defaultdict(list)
    for c in curves:
        if c.case == CASE_ESSENTIAL:
            by_cusp[c.cusp].append(c)
    signs = {}
    for cusp, group in by_cusp.items():
        prim = _primitive_class(group[0].homology)
        for c in group:
            if c.homology == prim:
                signs[c.id] = 1
            elif c.homology == (-prim[0], -prim[1]):
                signs[c.id] = -1
            else:
                raise SurfaceError(
                    f"essential curves on cusp {cusp} are not parallel: {c.homology} vs {prim}")
    return [replace(c, orientation=signs.get(c.id, 0)) for c in curves]


def essential_cycle(curves: Sequence[BoundaryCurve], cusp: int) -> list[int]:
    """Essential curves of a cusp in the cyclic order they sit on the torus."""
    essential = [c for c in curves if c.cusp == cusp and c.case == CASE_ESSENTIAL]
    if not essential:
        return []
    uf = _UnionFind()
    for c in curves:
        if c.cusp != cusp:
            continue
        uf.add(c.left_region)
        uf.add(c.right_region)
        if c.case != CASE_ESSENTIAL:
            uf.union(c.left_region, c.right_region)
    at = defaultdict(list)
    for c in essential:
        at[uf.find(c.left_region)].append(c.id)
        at[uf.find(c.right_region)].append(c.id)
    by_id = {c.id: c for c in essential}
    order = [essential[0].id]
    cur = essential[0]
    region = uf.find(cur.left_region)
    while len(order) < len(essential):
        nxt = next(i for i in at[region] if i != cur.id or at[region].count(i) > 1)
        if nxt in order:
            raise SurfaceError(f"essential curves on cusp {cusp} do not form a cycle")
        order.append(nxt)
        cur = by_id[nxt]
        a, b = uf.find(cur.left_region), uf.find(cur.right_region)
        region = b if a == region else a
    return order


def opposite_pairs(curves: Sequence[BoundaryCurve]) -> dict:
    """Per cusp: whether parallel essential curves occur with both orientations."""
    out = {}
    for c in curves:
        if c.case == CASE_ESSENTIAL:
            out.setdefault(c.cusp, set()).add(c.orientation)
    return {cusp: len(s) == 2 for cusp, s in out.items()}


def innermost_first(curves: Sequence[BoundaryCurve]) -> list[BoundaryCurve]:
    return sorted(curves, key=lambda c: (-c.depth, c.id))


def cap_case1(surface: SurfaceComplex, curves: Sequence[BoundaryCurve]) -> SurfaceComplex:
    """Cap every clockwise null-homotopic curve, innermost first."""
    targets = innermost_first([c for c in curves if c.case == CASE_CLOCKWISE])
    return _with_caps(surface, curves, [c.id for c in targets])


def cap_null_homotopic(surface: SurfaceComplex, curves: Sequence[BoundaryCurve]) -> SurfaceComplex:
    """Cap every null-homotopic curve, innermost first: the finished twisted-squares surface."""
    targets = innermost_first([c for c in curves if c.null_homotopic])
    return _with_caps(surface, curves, [c.id for c in targets])


def _with_caps(surface, curves, cap_ids):
    capped = SurfaceComplex(surface.tri, surface.x, surface.choice, tuple(cap_ids))
    capped.__dict__["curve_cache"] = list(curves)
    return capped


@dataclass(frozen=True)
class BuiltSurface:
    """Assembled surface, its classified curves and the capped result."""

    uncapped: SurfaceComplex
    curves: tuple[BoundaryCurve, ...]
    capped: SurfaceComplex

    @property
    def boundary_curves(self) -> list[BoundaryCurve]:
        capped = set(self.capped.caps)
        return [c for c in self.curves if c.id not in capped]


def build_surface(tri: IdealTriangulation, x: Sequence[int],
                  choice: Mapping[int, StripMatching]) -> BuiltSurface:
    surface = assemble_surface(tri, x, choice)
    curves = classify_curves(surface, trace_boundary_curves(surface))
    surface.__dict__["curve_cache"] = curves
    return BuiltSurface(surface, tuple(curves), cap_null_homotopic(surface, curves))


def double_choice(choice: Mapping[int, StripMatching]) -> dict:
    from .edgecombinatorics import double_matching
    return {e: double_matching(m) for e, m in choice.items()}
