"""
Locally bipartitioned trees and their links
===========================================

A tree with a split of the edges at every vertex, its bicolouring and
the link built from it.
"""

# %%
from plumbline import (associated_link, bipartitions_from_bicolouring, canonical_code,
                       compatible_bicolouring, component_count, enumerate_lbtrees, jones,
                       linking_matrix, mirror, orient)
from plumbline.links import to_pd_text
from plumbline.trees import Tree, parse_tree_text

# A star with three edges, one of them coloured differently
t = parse_tree_text("0 1 0\n0 2 0\n0 3 1\n")
for v in t.vertices:
    print(v, t.parts[v])

# %%
# Round trip through a compatible bicolouring
colour = compatible_bicolouring(t)
back = bipartitions_from_bicolouring(Tree.from_edges(t.edges), colour)
print(back == t, canonical_code(t).hex())

# %%
# k vertices give 2k crossings and k + 1 components
L = associated_link(t)
print(len(L.crossings), "crossings,", component_count(L), "components")
print(to_pd_text(L))
for row in linking_matrix(orient(L)):
    print(row)

# %%
# The Jones polynomial of the mirror is the original with t inverted
print(jones(orient(L)))
print(jones(orient(mirror(L))))

# %%
# Number of trees up to isomorphism, by size
print([sum(1 for _ in enumerate_lbtrees(k)) for k in range(1, 7)])
