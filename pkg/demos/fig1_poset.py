"""
Central poset of Fig. 1
=======================

Removing the central clique {1, 2, 3, 4} leaves six bridges.  Their
attachments on the clique order them; the width of that order is the number
of rays needed at the central node.
"""

from sdiso.fixtures import fig1_graph
from sdiso.poset import central_poset, width
from sdiso.sd import recognize_sd

g, idx, comps = fig1_graph()
cp = central_poset(g, [idx[x] for x in "1234"])
name = {i: k for i, b in enumerate(cp.bridges) for k, vs in comps.items() if vs == b.vertices}

for i, b in enumerate(cp.bridges):
    print(name[i], "lower", sorted(b.lower), "upper", sorted(b.upper))

print("covers:", sorted((name[a], name[b]) for a, b in cp.poset.covers()))
w = width(cp.poset)
print("width:", w.width)
print("chains:", [[name[x] for x in c] for c in w.chains])

for d in (2, 3):
    print(f"S_{d}-graph:", recognize_sd(g, d) is not None)
