# coding: utf-8

# # From the spun-normal surface to the twisted-squares surface
#
# Each boundary curve tells us one move.  Clockwise trivial curves are
# already capped the right way.  Anticlockwise ones need a disk
# compression.  Essential curves with opposite orientations can be joined
# by boundary annulus compressions; the rest are unwound.

from tsurf.compression import ledger_check, plan_for
from tsurf.surface import all_choices, build_surface
from tsurf.triangulation import builtin

tri = builtin("m009")
x = (0, 1, 0, 0, 0, 2, 0, 1, 0)

for choice in all_choices(tri, x):
    built = build_surface(tri, x, choice)
    plan = plan_for(built)
    print("choice", {e: m.pairs for e, m in choice.items()})
    print("   start: chi", plan.initial_chi, "boundary curves", plan.initial_boundary)
    for move in plan.moves:
        print("   ", move.kind, move.targets, "d_chi", move.d_chi, "d_boundary", move.d_boundary)
    print("   end:", plan.final_state(), "expected", (plan.expected.chi, plan.expected.boundary_count))
    print("   balanced:", bool(ledger_check(plan)))

# The nine strip choices give different pictures on the cusp: some need
# two disk compressions, some one, some none.  Annulus pairings are only a
# candidate: curves are paired like brackets around the torus, + opening
# and - closing.

from tsurf.compression import bracket_pairs

print(bracket_pairs([1, 1, -1, -1]), bracket_pairs([-1, 1, -1, 1]))
