"""Corner words around edges, region labels and thin-strip matchings.

Around an edge class the twisted squares meet the edge in sheets, each
labelled 0 or ∞.  Reading them anticlockwise at one end of the edge gives
the corner word.  End 0 is the head of the edge (traversal order reads
anticlockwise there), end 1 the tail, where the word appears reversed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .qmatching import QMatchingError, quad_edge_sign, quad_partner, quad_types
from .triangulation import IdealTriangulation, perm_sign

ZERO = 1
INFINITY = -1
SYMBOLS = {ZERO: "0", INFINITY: "inf"}


@dataclass(frozen=True)
class Letter:
    """One sheet of a twisted square meeting an edge.

    ``position`` is the index of the edge embedding (tetrahedron incidence)
    the sheet lives in; ``tet``, ``quad`` and ``sheet`` identify the square.
    """

    symbol: int
    position: int
    tet: int
    quad: int
    sheet: int

    @property
    def square(self) -> tuple[int, int]:
        return (self.tet, self.sheet)


@dataclass(frozen=True)
class CornerWord:
    edge: int
    end: int
    letters: tuple[Letter, ...]

    @property
    def symbols(self) -> tuple[int, ...]:
        return tuple(l.symbol for l in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def to_text(self) -> list[str]:
        return [SYMBOLS[s] for s in self.symbols]


@dataclass(frozen=True)
class RegionLabels:
    """Integer per gap; gap ``k`` lies between letters ``k`` and ``k + 1``."""

    labels: tuple[int, ...]
    n: int


@dataclass(frozen=True)
class StripMatching:
    """Non-crossing chords ``(0-letter, ∞-letter)`` by position in the end-0 word."""

    edge: int
    pairs: tuple[tuple[int, int], ...]

    def partner(self) -> dict:
        out = {}
        for p, q in self.pairs:
            out[p] = q
            out[q] = p
        return out


def depth_from(part_edge: frozenset, sheet: int, count: int) -> int:
    """Distance rank of copy ``sheet`` from the quad-type part edge ``part_edge``.

    Parallel copies of a square are numbered from the part containing vertex 0.
    """
    return sheet if 0 in part_edge else count - 1 - sheet


def nest_index(v: int, quad: int, sheet: int, count: int) -> int:
    """Position of a copy's arc in cusp triangle ``v``, 0 = farthest from the partner corner."""
    u = quad_partner(quad, v)
    return count - 1 - depth_from(frozenset((v, u)), sheet, count)


def corner_is_ascending(v: int, w: int, quad: int) -> bool:
    """Whether arc nests increase anticlockwise at corner ``w`` of cusp triangle ``v``.

    Anticlockwise runs from side ``(w, p)`` to side ``(w, q)`` with
    ``(v, w, p, q)`` odd; nests start at the side away from the partner of ``v``.
    """
    u = quad_partner(quad, v)
    p, q = (x for x in range(4) if x not in (v, w))
    if perm_sign((v, w, p, q)) == 1:
        p, q = q, p
    return p != u


def corner_sheets(v: int, w: int, quad: int, count: int) -> list[int]:
    """Copies ending at corner ``w`` of cusp triangle ``v``, anticlockwise.

    Empty when ``w`` is the partner of ``v`` (no square side along edge vw).
    """
    if w == quad_partner(quad, v):
        return []
    by_nest = sorted(range(count), key=lambda s: nest_index(v, quad, s, count))
    return by_nest if corner_is_ascending(v, w, quad) else by_nest[::-1]


def corner_words(tri: IdealTriangulation, x: Sequence[int], edge_id: int):
    """Both ends of the corner word of one edge class for an admissible ``x``."""
    types = quad_types(x)
    edge = tri.edge_classes[edge_id]
    end0, end1 = [], []
    for pos, emb in enumerate(edge.embeddings):
        info = types[emb.tet]
        if info is None:
            continue
        quad, count = info
        symbol = quad_edge_sign((emb.a, emb.b), quad)
        if symbol == 0:
            continue
        for s in corner_sheets(emb.b, emb.a, quad, count):
            end0.append(Letter(symbol, pos, emb.tet, quad, s))
    for pos in reversed(range(edge.degree)):
        emb = edge.embeddings[pos]
        info = types[emb.tet]
        if info is None:
            continue
        quad, count = info
        symbol = quad_edge_sign((emb.a, emb.b), quad)
        if symbol == 0:
            continue
        for s in corner_sheets(emb.a, emb.b, quad, count):
            end1.append(Letter(symbol, pos, emb.tet, quad, s))
    return CornerWord(edge_id, 0, tuple(end0)), CornerWord(edge_id, 1, tuple(end1))


def corner_word(tri: IdealTriangulation, x: Sequence[int], edge_id: int) -> CornerWord:
    return corner_words(tri, x, edge_id)[0]


def _symbols(word) -> tuple[int, ...]:
    return word.symbols if isinstance(word, CornerWord) else tuple(word)


def region_labels(word) -> RegionLabels:
    """Labels rising by one across each 0 letter, anticlockwise; minimum 0."""
    symbols = _symbols(word)
    if sum(symbols) != 0:
        edge = getattr(word, "edge", "?")
        raise QMatchingError(f"Q-matching fails at edge {edge}")
    if not symbols:
        return RegionLabels((), 0)
    raw = [0]
    for k in range(1, len(symbols)):
        raw.append(raw[-1] + symbols[k])
    low = min(raw)
    labels = tuple(v - low for v in raw)
    return RegionLabels(labels, max(labels))


def mirror_gap(k: int, length: int) -> int:
    """Gap at the other end of the edge matching gap ``k``."""
    return (length - 2 - k) % length


def check_end_duality(labels0: RegionLabels, labels1: RegionLabels) -> bool:
    length = len(labels0.labels)
    if length != len(labels1.labels) or labels0.n != labels1.n:
        return False
    return all(labels1.labels[k] == labels0.n - labels0.labels[mirror_gap(k, length)]
               for k in range(length))


def sheet_push_counts(labels: RegionLabels) -> list[tuple[int, int]]:
    """Per gap: sheets pushed to this end and to the other end."""
    return [(k, labels.n - k) for k in labels.labels]


def _matchings(symbols: Sequence[int], idx: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not idx:
        yield []
        return
    first = idx[0]
    balance = 0
    for j in range(1, len(idx)):
        if symbols[idx[j]] == -symbols[first] and balance == 0:
            chord = (first, idx[j]) if symbols[first] == ZERO else (idx[j], first)
            for inner in _matchings(symbols, idx[1:j]):
                for outer in _matchings(symbols, idx[j + 1:]):
                    yield [chord] + inner + outer
        balance += symbols[idx[j]]


def enumerate_strip_matchings(word) -> list[StripMatching]:
    """All ways to pair 0 with ∞ letters by non-crossing chords, in a fixed order."""
    symbols = _symbols(word)
    if sum(symbols) != 0:
        raise QMatchingError(f"Q-matching fails at edge {getattr(word, 'edge', '?')}")
    edge = getattr(word, "edge", -1)
    return [StripMatching(edge, tuple(sorted(pairs)))
            for pairs in _matchings(symbols, list(range(len(symbols))))]


def chords_cross(p: tuple[int, int], q: tuple[int, int]) -> bool:
    a, b = sorted(p)
    c, d = sorted(q)
    return (a < c < b) != (a < d < b)


def is_valid_matching(word, matching: StripMatching) -> bool:
    symbols = _symbols(word)
    used = [i for pair in matching.pairs for i in pair]
    if sorted(used) != list(range(len(symbols))):
        return False
    if any(symbols[p] != ZERO or symbols[q] != INFINITY for p, q in matching.pairs):
        return False
    pairs = matching.pairs
    return not any(chords_cross(pairs[i], pairs[j])
                   for i in range(len(pairs)) for j in range(i + 1, len(pairs)))


def double_matching(matching: StripMatching) -> StripMatching:
    """The parallel copy of a matching on the doubled word (letter k -> 2k, 2k+1)."""
    pairs = []
    for p, q in matching.pairs:
        lo, hi = min(p, q), max(p, q)
        outer = (2 * lo, 2 * hi + 1)
        inner = (2 * lo + 1, 2 * hi)
        for a, b in (outer, inner):
            # keep (0-letter, ∞-letter) orientation
            pairs.append((a, b) if (a // 2) == p else (b, a))
    return StripMatching(matching.edge, tuple(sorted(pairs)))


def disk_regions(length: int, matching: StripMatching) -> list[int]:
    """Region of the cross-section disk containing each gap (chords cut the disk)."""
    if length == 0:
        return []
    partner = matching.partner()
    parent = list(range(length))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for k in range(length):
        nxt = partner[(k + 1) % length]
        parent[find(k)] = find(nxt % length)
    roots = {}
    return [roots.setdefault(find(k), len(roots)) for k in range(length)]
