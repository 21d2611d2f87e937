"""Q-matching equations, admissibility and integer scaling of quad vectors.

Quad type ``i`` in a tetrahedron separates ``{0, i+1}`` from the other two
vertices.  A quad vector has one entry per (tetrahedron, quad type), at
index ``3 * t + i``.  All arithmetic is exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .triangulation import IdealTriangulation, even_completion

QUAD_PARTITIONS = (
    (frozenset((0, 1)), frozenset((2, 3))),
    (frozenset((0, 2)), frozenset((1, 3))),
    (frozenset((0, 3)), frozenset((1, 2))),
)


class QMatchingError(ValueError):
    pass


def quad_type_of(p: int, q: int) -> int:
    """Quad type whose partition has ``{p, q}`` as one part."""
    other = ({p, q} - {0}).pop() if 0 in (p, q) else ({0, 1, 2, 3} - {p, q} - {0}).pop()
    return other - 1


def quad_partner(i: int, v: int) -> int:
    """The vertex on the same side of quad type ``i`` as ``v``."""
    for part in QUAD_PARTITIONS[i]:
        if v in part:
            return next(u for u in part if u != v)
    raise ValueError(v)


def quad_edge_sign(edge: Sequence[int], i: int) -> int:
    """Screw sign of quad type ``i`` at tetrahedron edge ``{a, b}``.

    0 when the quad is disjoint from the edge.  Otherwise, with ``(a, b, c,
    d)`` even, the type separating ``{a, c} | {b, d}`` gives +1 (a 0-edge
    of the twisted square) and ``{a, d} | {b, c}`` gives -1 (an ∞-edge).
    """
    a, b = edge
    if a == b:
        raise ValueError("edge needs two distinct vertices")
    if quad_partner(i, a) == b:
        return 0
    c, d = even_completion(a, b)
    return 1 if quad_partner(i, a) == c else -1


@dataclass(frozen=True)
class QMatrix:
    rows: tuple[tuple[int, ...], ...]
    row_edges: tuple[int, ...]
    columns: tuple[tuple[int, int], ...]

    def __matmul__(self, x: Sequence) -> list:
        return [sum(q * xi for q, xi in zip(row, x)) for row in self.rows]

    def to_document(self) -> dict:
        return {
            "schema_version": "1",
            "rows": [list(r) for r in self.rows],
            "row_edges": list(self.row_edges),
            "columns": [list(c) for c in self.columns],
        }


def build_q_matrix(tri: IdealTriangulation) -> QMatrix:
    n = tri.tet_count
    rows = []
    for edge in tri.edge_classes:
        row = [0] * (3 * n)
        for emb in edge.embeddings:
            for i in range(3):
                row[3 * emb.tet + i] += quad_edge_sign((emb.a, emb.b), i)
        rows.append(tuple(row))
    columns = tuple((t, i) for t in range(n) for i in range(3))
    return QMatrix(tuple(rows), tuple(e.id for e in tri.edge_classes), columns)


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    negative: tuple[int, ...]
    multiple_types: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.admissible


def is_admissible(x: Sequence, tet_count: int | None = None) -> AdmissibilityReport:
    """Nonnegative with at most one nonzero quad type per tetrahedron.

    The report lists offending tetrahedra (by negativity and by type clash).
    """
    if len(x) % 3 or (tet_count is not None and len(x) != 3 * tet_count):
        raise QMatchingError(f"quad vector has length {len(x)}, expected 3 per tetrahedron")
    negative, multiple = [], []
    for t in range(len(x) // 3):
        block = x[3 * t:3 * t + 3]
        if any(v < 0 for v in block):
            negative.append(t)
        if sum(1 for v in block if v != 0) > 1:
            multiple.append(t)
    return AdmissibilityReport(not negative and not multiple, tuple(negative), tuple(multiple))


@dataclass(frozen=True)
class MatchingReport:
    satisfied: bool
    residuals: tuple

    def __bool__(self) -> bool:
        return self.satisfied


def verify_q_matching(q: QMatrix, x: Sequence) -> MatchingReport:
    if len(x) != len(q.columns):
        raise QMatchingError(f"quad vector has length {len(x)}, expected {len(q.columns)}")
    residuals = tuple(q @ x)
    return MatchingReport(all(r == 0 for r in residuals), residuals)


def double_solution(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(2 * v for v in x)


def scale_to_primitive(x: Sequence) -> tuple[int, ...]:
    """The positive integer multiple of ``x`` with coprime entries."""
    fracs = [Fraction(v) for v in x]
    if all(f == 0 for f in fracs):
        raise QMatchingError("cannot scale the zero vector")
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if any(v < 0 for v in ints) and not any(v > 0 for v in ints):
        g = -g
    return tuple(v // g for v in ints)


def projective(x: Sequence) -> tuple[Fraction, ...]:
    """Rescale so the coordinates sum to one."""
    total = sum(Fraction(v) for v in x)
    if total == 0:
        raise QMatchingError("coordinate sum is zero")
    return tuple(Fraction(v) / total for v in x)


def parse_quad_vector(text: str, tet_count: int | None = None) -> tuple:
    """Read a flat JSON array of integers or ``"p/q"`` strings."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QMatchingError(f"malformed quad vector: {exc}") from None
    if not isinstance(doc, list):
        raise QMatchingError("malformed quad vector: expected a JSON array")
    values = []
    for v in doc:
        if isinstance(v, bool):
            raise QMatchingError("malformed quad vector entry")
        if isinstance(v, int):
            values.append(v)
        elif isinstance(v, str):
            try:
                f = Fraction(v)
            except ValueError:
                raise QMatchingError(f"malformed rational entry {v!r}") from None
            values.append(int(f) if f.denominator == 1 else f)
        else:
            raise QMatchingError(f"malformed quad vector entry {v!r}")
    if tet_count is not None and len(values) != 3 * tet_count:
        raise QMatchingError(f"quad vector has length {len(values)}, expected {3 * tet_count}")
    return tuple(values)


def quad_vector_to_json(x: Sequence) -> list:
    out = []
    for v in x:
        f = Fraction(v)
        out.append(int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}")
    return out


def quad_types(x: Sequence) -> list:
    """Per tetrahedron: ``(type, count)`` of its quads, or None if empty."""
    out = []
    for t in range(len(x) // 3):
        nz = [(i, x[3 * t + i]) for i in range(3) if x[3 * t + i] != 0]
        if len(nz) > 1:
            raise QMatchingError(f"tetrahedron {t} carries more than one quad type")
        out.append(nz[0] if nz else None)
    return out
