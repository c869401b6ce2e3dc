"""
Runtime of sd_iso against brute force
=====================================

Random S_3-graphs against seeded relabelings.  Brute force is run only while
it stays small.
"""

import time

from sdiso.instances import brute_iso, random_relabel, random_sd_graph
from sdiso.sd import sd_iso

print(f"{'n':>5} {'sd_iso ms':>10} {'brute ms':>10}")
for n in (8, 12, 16, 20, 50, 100, 200):
    g, _ = random_sd_graph(n, 3, n)
    h, _ = random_relabel(g, n + 1)
    t0 = time.perf_counter()
    v = sd_iso(g, h, 3)
    ours = (time.perf_counter() - t0) * 1000
    assert v.isomorphic
    brute = "-"
    if n <= 20:
        t0 = time.perf_counter()
        brute_iso(g, h)
        brute = f"{(time.perf_counter() - t0) * 1000:.1f}"
    print(f"{n:>5} {ours:>10.1f} {brute:>10}")
