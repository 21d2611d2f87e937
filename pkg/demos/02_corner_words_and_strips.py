# coding: utf-8

# # Corner words, region labels and thin strips
#
# Replace every quad of a solution by a twisted square.  Around an edge the
# squares meet in sheets marked 0 or ∞; reading them anticlockwise gives a
# corner word.  The Q-matching equation at that edge says exactly that the
# word has as many 0s as ∞s.

from tsurf.edgecombinatorics import (
    check_end_duality, corner_words, enumerate_strip_matchings, region_labels, sheet_push_counts,
)
from tsurf.triangulation import builtin

tri = builtin("m009")
x = (0, 0, 0, 0, 0, 1, 0, 1, 0)

for edge in tri.edge_classes:
    end0, end1 = corner_words(tri, x, edge.id)
    print("edge", edge.id, "head end:", end0.to_text(), "tail end:", end1.to_text())

# Edge 0 carries four alternating sheets: the saddle configuration.

word, other_end = corner_words(tri, x, 0)
labels = region_labels(word)
print("labels", labels.labels, "n =", labels.n)

# Between consecutive sheets sits a small disk.  Its label counts how many
# sheets get pushed towards this end; the rest go to the other end.

print("push counts (this end, other end):", sheet_push_counts(labels))
print("labels agree with the other end:", check_end_duality(labels, region_labels(other_end)))

# ## Thin strips
#
# Sheets are rejoined in pairs, each 0 with an ∞, by long thin strips
# parallel to the edge.  Seen in cross-section the strips are chords of a
# disk, and they may not cross.

for m in enumerate_strip_matchings(word):
    print("matching", m.pairs)

# A word (0, 0, ∞, ∞) has only the nested matching.

from tsurf.edgecombinatorics import INFINITY, ZERO

print([m.pairs for m in enumerate_strip_matchings((ZERO, ZERO, INFINITY, INFINITY))])
