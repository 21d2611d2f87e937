"""Compression plans taking a spun-normal surface to its twisted-squares surface.

The plan lists moves, one per classified boundary curve (plus possible
deletions of boundary-parallel tori), together with an Euler
characteristic and boundary-count ledger.  The spun-normal surface is
never materialised; the ledger starts from the state it implies and must
end exactly at the twisted-squares surface.

Which essential curves are joined by boundary annuli is not determined by
the combinatorics alone.  Curves are paired by cyclic bracket matching of
their orientation signs around each cusp (``+`` opens, ``-`` closes); the
result is a candidate pairing, maximal among non-crossing pairings.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .surface import (
    CASE_ANTICLOCKWISE, CASE_CLOCKWISE, CASE_ESSENTIAL, BoundaryCurve, BuiltSurface,
    essential_cycle, innermost_first,
)

CAP_CASE1 = "CapCase1"
DISK_COMPRESSION = "DiskCompression"
ANNULUS_COMPRESSION = "AnnulusCompression"
UNWIND = "Unwind"
DELETE_TORUS = "DeleteBoundaryParallelTorus"

# (delta chi, delta boundary components) of each move
MOVE_DELTAS = {
    CAP_CASE1: (1, -1),
    DISK_COMPRESSION: (2, 0),
    ANNULUS_COMPRESSION: (0, 2),
    UNWIND: (0, 0),
    DELETE_TORUS: (0, 0),
}


class CompressionError(ValueError):
    pass


@dataclass(frozen=True)
class CompressionMove:
    kind: str
    targets: tuple[int, ...]
    d_chi: int
    d_boundary: int
    cusp: int
    depth: int = 0
    annulus: dict | None = field(default=None, compare=False)

    def to_document(self) -> dict:
        doc = {
            "kind": self.kind,
            "targets": list(self.targets),
            "cusp": self.cusp,
            "d_chi": self.d_chi,
            "d_boundary": self.d_boundary,
        }
        if self.annulus is not None:
            doc["annulus"] = self.annulus
        return doc


def make_move(kind: str, targets, cusp: int, depth: int = 0, annulus=None) -> CompressionMove:
    d_chi, d_boundary = MOVE_DELTAS[kind]
    return CompressionMove(kind, tuple(targets), d_chi, d_boundary, cusp, depth, annulus)


@dataclass(frozen=True)
class SurfaceSummary:
    """What the ledger needs to know about a surface."""

    chi: int
    boundary: tuple  # sorted (cusp, (p, q)) per boundary curve

    @property
    def boundary_count(self) -> int:
        return len(self.boundary)

    def to_document(self) -> dict:
        return {"chi": self.chi, "boundary": [[c, list(h)] for c, h in self.boundary]}


def summarize(built: BuiltSurface) -> SurfaceSummary:
    from .surface import euler_characteristic
    return SurfaceSummary(
        euler_characteristic(built.capped),
        tuple(sorted((c.cusp, c.homology) for c in built.boundary_curves)))


@dataclass(frozen=True)
class CompressionPlan:
    moves: tuple[CompressionMove, ...]
    curves: tuple[BoundaryCurve, ...]
    initial_chi: int
    initial_boundary: int
    expected: SurfaceSummary

    def final_state(self) -> tuple[int, int]:
        chi, bdry = self.initial_chi, self.initial_boundary
        for m in self.moves:
            chi += m.d_chi
            bdry += m.d_boundary
        return chi, bdry

    def final_boundary(self) -> tuple:
        by_id = {c.id: c for c in self.curves}
        out = [(by_id[i].cusp, by_id[i].homology) for m in self.moves
               if m.kind in (ANNULUS_COMPRESSION, UNWIND) for i in m.targets]
        return tuple(sorted(out))

    def to_document(self) -> dict:
        return {
            "initial": {"chi": self.initial_chi, "boundary": self.initial_boundary},
            "moves": [m.to_document() for m in self.moves],
            "expected": self.expected.to_document(),
        }


def bracket_pairs(signs: Sequence[int]) -> list[tuple[int, int]]:
    """Cyclic bracket matching: ``+1`` opens, the next free ``-1`` ahead closes.

    Returns index pairs ``(open, close)``; unmatched indices are left out.
    The number of pairs is ``min(#plus, #minus)``.
    """
    n = len(signs)
    if n == 0:
        return []
    # start just after the position of minimal prefix sum, so the rotated
    # word never dips below its starting level
    total, low, start = 0, 0, 0
    for i, s in enumerate(signs):
        total += s
        if total < low:
            low, start = total, i + 1
    stack, pairs = [], []
    for k in range(n):
        i = (start + k) % n
        if signs[i] > 0:
            stack.append(i)
        elif stack:
            pairs.append((stack.pop(), i))
    return pairs


def pair_depths(signs: Sequence[int], pairs: Sequence[tuple[int, int]]) -> list[int]:
    """Nesting depth of each bracket pair (0 = outermost)."""
    n = len(signs)
    total, low, start = 0, 0, 0
    for i, s in enumerate(signs):
        total += s
        if total < low:
            low, start = total, i + 1
    rank = {(start + k) % n: k for k in range(n)}
    spans = [(rank[a], rank[b]) for a, b in pairs]
    return [sum(1 for (c, d) in spans if c < a and b < d) for a, b in spans]


def plan_compressions(curves: Sequence[BoundaryCurve], uncapped_chi: int,
                      expected: SurfaceSummary | None = None) -> CompressionPlan:
    """Order the moves: caps and disk compressions innermost first, annuli outermost first."""
    if any(c.case not in (CASE_CLOCKWISE, CASE_ANTICLOCKWISE, CASE_ESSENTIAL) for c in curves):
        raise CompressionError("unclassified curve in plan input")
    moves = []
    for c in innermost_first([c for c in curves if c.case == CASE_CLOCKWISE]):
        moves.append(make_move(CAP_CASE1, [c.id], c.cusp, c.depth))
    for c in innermost_first([c for c in curves if c.case == CASE_ANTICLOCKWISE]):
        moves.append(make_move(DISK_COMPRESSION, [c.id], c.cusp, c.depth))

    by_id = {c.id: c for c in curves}
    cusps = sorted({c.cusp for c in curves})
    annuli, unwinds = [], []
    for cusp in cusps:
        order = essential_cycle(curves, cusp)
        signs = [by_id[i].orientation for i in order]
        pairs = bracket_pairs(signs)
        depths = pair_depths(signs, pairs)
        paired = set()
        for (a, b), depth in zip(pairs, depths):
            ids = (order[a], order[b])
            paired.update(ids)
            annuli.append(make_move(
                ANNULUS_COMPRESSION, ids, cusp, depth,
                annulus={"alpha": list(ids), "beta_class": list(by_id[ids[0]].homology)}))
        unwinds += [make_move(UNWIND, [i], cusp) for i in order if i not in paired]
    annuli.sort(key=lambda m: (m.cusp, m.depth, m.targets))
    moves += annuli + unwinds

    case_counts = defaultdict(Counter)
    for c in curves:
        case_counts[c.cusp][c.case] += 1
    for cusp in cusps:
        if case_counts[cusp][CASE_ANTICLOCKWISE] and not case_counts[cusp][CASE_ESSENTIAL]:
            moves.append(make_move(DELETE_TORUS, [], cusp))

    n_case1 = sum(1 for c in curves if c.case == CASE_CLOCKWISE)
    n_case2 = sum(1 for c in curves if c.case == CASE_ANTICLOCKWISE)
    if expected is None:
        expected = SurfaceSummary(
            uncapped_chi + n_case1 + n_case2,
            tuple(sorted((c.cusp, c.homology) for c in curves if c.case == CASE_ESSENTIAL)))
    return CompressionPlan(tuple(moves), tuple(curves), uncapped_chi - n_case2,
                           n_case1 + len(unwinds), expected)


def plan_for(built: BuiltSurface) -> CompressionPlan:
    from .surface import euler_characteristic
    return plan_compressions(built.curves, euler_characteristic(built.uncapped), summarize(built))


@dataclass(frozen=True)
class LedgerReport:
    balanced: bool
    first_bad_move: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.balanced

    def to_document(self) -> dict:
        return {"balanced": self.balanced, "first_bad_move": self.first_bad_move,
                "reason": self.reason}


def ledger_check(plan: CompressionPlan, summary: SurfaceSummary | None = None) -> LedgerReport:
    """Audit a plan: move constants, ordering, annulus criterion and final state."""
    summary = summary or plan.expected
    by_id = {c.id: c for c in plan.curves}
    for k, m in enumerate(plan.moves):
        if m.kind not in MOVE_DELTAS:
            return LedgerReport(False, k, f"unknown move kind {m.kind}")
        if (m.d_chi, m.d_boundary) != MOVE_DELTAS[m.kind]:
            return LedgerReport(False, k, f"{m.kind} has deltas ({m.d_chi}, {m.d_boundary}), "
                                          f"expected {MOVE_DELTAS[m.kind]}")
        if k and _phase(m) < _phase(plan.moves[k - 1]):
            return LedgerReport(False, k, "moves out of phase order")
        prev = plan.moves[k - 1] if k else None
        if prev is not None and prev.kind == m.kind and prev.cusp == m.cusp:
            if m.kind in (CAP_CASE1, DISK_COMPRESSION) and m.depth > prev.depth:
                return LedgerReport(False, k, f"{m.kind} not innermost first")
            if m.kind == ANNULUS_COMPRESSION and m.depth < prev.depth:
                return LedgerReport(False, k, "annulus compressions not outermost first")
        if m.kind == ANNULUS_COMPRESSION:
            a, b = (by_id[i] for i in m.targets)
            if a.orientation != -b.orientation or a.case != CASE_ESSENTIAL:
                return LedgerReport(False, k, "annulus joins curves without opposite orientations")
    used = Counter(i for m in plan.moves for i in m.targets)
    if any(n != 1 for n in used.values()) or set(used) != set(by_id):
        return LedgerReport(False, None, "curves not consumed exactly once")
    opposite = any(
        len({c.orientation for c in plan.curves if c.cusp == cusp and c.case == CASE_ESSENTIAL}) == 2
        for cusp in {c.cusp for c in plan.curves})
    has_annulus = any(m.kind == ANNULUS_COMPRESSION for m in plan.moves)
    if opposite != has_annulus:
        return LedgerReport(False, None, "annulus compressions do not match opposite orientations")
    chi, bdry = plan.final_state()
    if (chi, bdry) != (summary.chi, summary.boundary_count):
        return LedgerReport(False, None, f"final state ({chi}, {bdry}) differs from "
                                         f"({summary.chi}, {summary.boundary_count})")
    if plan.final_boundary() != tuple(summary.boundary):
        return LedgerReport(False, None, "final boundary curves differ")
    return LedgerReport(True)


_PHASES = [CAP_CASE1, DISK_COMPRESSION, ANNULUS_COMPRESSION, UNWIND, DELETE_TORUS]


def _phase(move: CompressionMove) -> int:
    return _PHASES.index(move.kind)
