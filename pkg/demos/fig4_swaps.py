"""
Why poset automorphisms are not enough
======================================

The two graphs of Fig. 4 share a central clique of size 8 and have isomorphic
central posets, so the colored poset group contains swaps between the two
sides.  The attachment sets disagree on the clique, and the Venn-diagram
filter removes every swap.
"""

from sdiso.fixtures import fig4_pair
from sdiso.instances import brute_iso
from sdiso.permgroup import colored_poset_aut
from sdiso.poset import central_poset
from sdiso.sd import PairedPoset, sd_iso
from sdiso.venn import gamma_prime, venn_cells

g, h = fig4_pair()
print("G:", g.n, "vertices,", g.m, "edges")
print("H:", h.n, "vertices,", h.m, "edges")

cp = central_poset(g, range(8), check_maximal=False)
cq = central_poset(h, range(8), check_maximal=False)
pp = PairedPoset(g, cp, h, cq)
print("bridges per side:", pp.k, " levels:", len(pp.levels))

gamma = colored_poset_aut(pp.poset)
print("colored poset group order:", gamma.order())
print("swap present:", pp.apex_q in gamma.orbit(pp.apex_p))

# the two 3-element attachment sets on each side
for side, name in ((0, "G"), (1, "H")):
    keys = [(i + side * pp.k, 0) for i in range(pp.k)
            if len(pp.collection.members[(i + side * pp.k, 0)]) == 3]
    cells = venn_cells(pp.collection, keys)
    print(name, "cells (both, first only, second only):",
          cells.get(frozenset(keys), 0), cells.get(frozenset(keys[:1]), 0), cells.get(frozenset(keys[1:]), 0))

final = gamma_prime(pp.collection, pp.levels, gamma, 8)
print("after the Venn filter, order:", final.order(), " swap present:", pp.apex_q in final.orbit(pp.apex_p))

print("sd_iso:", "ISOMORPHIC" if sd_iso(g, h, 8).isomorphic else "NOT-ISOMORPHIC")
print("brute :", "ISOMORPHIC" if brute_iso(g, h).isomorphic else "NOT-ISOMORPHIC")
