# coding: utf-8

# # Building twisted-squares surfaces
#
# Pick a solution and one strip matching per edge.  The squares and
# strips form a surface whose boundary runs around the cusp tori as closed
# curves.  Curves that bound disks on the torus get capped off.

import tempfile
from pathlib import Path

from tsurf.enumeration import enumerate_admissible_vertices
from tsurf.surface import all_choices, build_surface, double_choice, euler_characteristic
from tsurf.svg import cusp_svg
from tsurf.triangulation import builtin

tri = builtin("m004")
CASES = {1: "trivial, clockwise", 2: "trivial, anticlockwise", 3: "essential"}

for v in enumerate_admissible_vertices(tri):
    for choice in all_choices(tri, v.primitive):
        built = build_surface(tri, v.primitive, choice)
        print("solution", v.primitive)
        for c in built.curves:
            print("   curve", c.id, "class", c.homology, CASES[c.case], "depth", c.depth)
        print("   chi after capping:", euler_characteristic(built.capped),
              "two-sided:", built.capped.orientability())

# Every figure-eight vertex surface is a once-punctured Klein bottle: chi
# is -1 and it is one-sided.  The essential boundary classes come in two
# slopes, the familiar boundary slopes +4 and -4 in some basis.

# ## Doubling
#
# Taking two parallel copies of every square, and doubling each strip
# matching in parallel, gives the boundary of a regular neighbourhood: a
# two-sided surface with twice the Euler characteristic.

v = enumerate_admissible_vertices(tri)[0]
(choice,) = all_choices(tri, v.primitive)
double = build_surface(tri, tuple(2 * a for a in v.primitive), double_choice(choice))
print("doubled chi:", euler_characteristic(double.capped), "two-sided:", double.capped.orientability())

# ## Pictures
#
# One SVG per cusp: the link triangles with each truncation arc drawn as an
# arrow, coloured by the case of its curve.

built = build_surface(tri, v.primitive, choice)
out = Path(tempfile.mkdtemp()) / "m004_cusp0.svg"
out.write_text(cusp_svg(built.uncapped, 0, built.curves))
print("wrote", out)
