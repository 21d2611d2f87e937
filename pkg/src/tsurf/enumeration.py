"""Vertex enumeration of the projective admissible solution space.

Extreme rays of ``{x >= 0, Q x = 0}`` are found with the double description
method in exact integer arithmetic.  Admissibility is enforced during the
elimination: two rays are only combined if their joint support uses at most
one quad type per tetrahedron.  This yields exactly the union, over all
support patterns, of the extreme rays of the corresponding faces, without
visiting the ``3 ** tet_count`` patterns one by one.  Cost is still
exponential in the worst case; intended for census-sized triangulations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .qmatching import QMatrix, build_q_matrix, projective, scale_to_primitive
from .triangulation import IdealTriangulation

# per tetrahedron: None ("no quads") or a quad type 0..2
SupportPattern = tuple


@dataclass(frozen=True)
class VertexSolution:
    projective: tuple[Fraction, ...]
    primitive: tuple[int, ...]
    support: SupportPattern

    def to_document(self) -> dict:
        from .qmatching import quad_vector_to_json
        return {
            "projective": quad_vector_to_json(self.projective),
            "primitive": list(self.primitive),
            "support": [None if s is None else s for s in self.support],
        }


def support_pattern(x: Sequence) -> SupportPattern:
    out = []
    for t in range(len(x) // 3):
        nz = [i for i in range(3) if x[3 * t + i] != 0]
        out.append(nz[0] if nz else None)
    return tuple(out)


def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for a in v:
        g = gcd(g, a)
    return tuple(a // g for a in v) if g > 1 else tuple(v)


def _support_mask(v: Sequence[int]) -> int:
    mask = 0
    for j, a in enumerate(v):
        if a:
            mask |= 1 << j
    return mask


def _admissible_mask(mask: int, tet_count: int) -> bool:
    for t in range(tet_count):
        block = (mask >> (3 * t)) & 7
        if block & (block - 1):
            return False
    return True


def double_description(rows: Sequence[Sequence[int]], dim: int,
                       tet_count: int | None = None) -> list[tuple[int, ...]]:
    """Extreme rays of ``{y in R^dim : y >= 0, rows . y = 0}``.

    With ``tet_count`` given, coordinates are grouped in triples and only
    rays meeting each triple in at most one coordinate are kept.
    """
    rays = [tuple(1 if j == k else 0 for j in range(dim)) for k in range(dim)]
    for row in rows:
        if not any(row):
            continue
        values = [sum(r * y for r, y in zip(row, ray)) for ray in rays]
        zero = [ray for ray, val in zip(rays, values) if val == 0]
        pos = [(ray, val) for ray, val in zip(rays, values) if val > 0]
        neg = [(ray, val) for ray, val in zip(rays, values) if val < 0]
        masks = [_support_mask(ray) for ray in rays]
        new = list(zero)
        for rp, vp in pos:
            mp = _support_mask(rp)
            for rn, vn in neg:
                mn = _support_mask(rn)
                joint = mp | mn
                if tet_count is not None and not _admissible_mask(joint, tet_count):
                    continue
                # combinatorial adjacency: no other ray has support inside the joint support
                if any(m | joint == joint and m != mp and m != mn for m in masks):
                    continue
                combo = [(-vn) * a + vp * b for a, b in zip(rp, rn)]
                new.append(_primitive(combo))
        rays = new
    return sorted(set(rays))


def extreme_rays(pattern: SupportPattern, q: QMatrix) -> list[tuple[int, ...]]:
    """Primitive extreme rays of the cone of solutions supported on ``pattern``."""
    columns = [3 * t + i for t, i in enumerate(pattern) if i is not None]
    if not columns:
        return []
    sub = [[row[c] for c in columns] for row in q.rows]
    out = []
    for ray in double_description(sub, len(columns)):
        full = [0] * len(q.columns)
        for c, value in zip(columns, ray):
            full[c] = value
        out.append(tuple(full))
    return sorted(out)


def admissible_rays(q: QMatrix, tet_count: int) -> list[tuple[int, ...]]:
    return double_description(q.rows, 3 * tet_count, tet_count)


def enumerate_admissible_vertices(tri: IdealTriangulation,
                                  q: QMatrix | None = None) -> list[VertexSolution]:
    """All vertices of the projective admissible solution space, sorted by primitive vector."""
    q = q or build_q_matrix(tri)
    rays = admissible_rays(q, tri.tet_count)
    return [_vertex(r) for r in rays]


def vertices_from_patterns(q: QMatrix, patterns: Iterable[SupportPattern]) -> list[VertexSolution]:
    """Same output as ``enumerate_admissible_vertices`` but branch by branch."""
    rays = set()
    for pattern in patterns:
        rays.update(extreme_rays(pattern, q))
    return [_vertex(r) for r in sorted(rays)]


def _vertex(ray: tuple[int, ...]) -> VertexSolution:
    prim = scale_to_primitive(ray)
    return VertexSolution(projective(prim), prim, support_pattern(prim))
