# coding: utf-8

# # A first look at the figure-eight knot complement
#
# The figure-eight knot complement has an ideal triangulation with two
# tetrahedra.  It ships with the package as the census triangulation m004.

from tsurf.triangulation import builtin, emit_triangulation

tri = builtin("m004")
print(emit_triangulation(tri))

# Each row lists, for faces 0..3 of one tetrahedron, the neighbour and the
# vertex permutation of the gluing.  Face f is the face opposite vertex f.

# ## Edges
#
# Six tetrahedron edges in each tetrahedron, twelve slots in total, fall
# into two edge classes of degree six.

for edge in tri.edge_classes:
    print("edge", edge.id, "degree", edge.degree, "slots", edge.incidences)

# ## The cusp
#
# Truncating the four ideal vertices of both tetrahedra gives eight small
# triangles.  They glue up into a single torus.

(link,) = tri.cusp_links
print("link triangles:", len(link.triangles), "edges:", len(link.edges),
      "vertices:", len(link.vertices), "chi:", link.euler_characteristic)

# The two basis loops are closed paths in this torus triangulation; every
# curve we meet later gets coordinates with respect to them.

for k, loop in enumerate(link.basis):
    print("basis loop", k, "has", len(loop), "edges; coordinates", link.coordinates(loop))

# ## Q-matching equations
#
# One equation per edge, one column per (tetrahedron, quad type).

from tsurf.qmatching import build_q_matrix

q = build_q_matrix(tri)
for edge, row in zip(q.row_edges, q.rows):
    print("edge", edge, row)

# The vector with every entry 1 is always a solution: around each
# tetrahedron edge one quad type is parallel and the other two cancel.

print("Q . (1,...,1) =", q @ [1] * 6)

# ## Vertex solutions
#
# Admissible solutions use at most one quad type per tetrahedron.  The
# extreme rays of that space are the vertex solutions.

from tsurf.enumeration import enumerate_admissible_vertices

for v in enumerate_admissible_vertices(tri):
    print("primitive", v.primitive, "projective", [str(f) for f in v.projective])
